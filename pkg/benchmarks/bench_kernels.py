"""Compare the compiled kernels with the pure-Python fallback on F_p inputs.

    python3 benchmarks/bench_kernels.py [--size 120] [--repeat 5]

Only prime-field arithmetic goes through these kernels; Q, Q(t) and GF(p^k)
work is unaffected by the choice of backend.
"""
from __future__ import annotations

import argparse
import random
import timeit

from hasse_jets import _kernels_py

try:
    from hasse_jets import _kernels as compiled
except ImportError:
    compiled = None


def random_matrix(rng, n, p):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def random_poly(rng, terms, nvars, deg, p):
    out = {}
    while len(out) < terms:
        out[tuple(rng.randrange(deg + 1) for _ in range(nvars))] = rng.randrange(1, p)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--prime", type=int, default=32003)
    args = ap.parse_args()
    rng = random.Random(0)
    p = args.prime
    M = random_matrix(rng, args.size, p)
    a = random_poly(rng, args.size, 3, 12, p)
    b = random_poly(rng, args.size, 3, 12, p)
    backends = [("python", _kernels_py)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled kernels not built; timing the fallback only")
    results = {}
    for name, mod in backends:
        t_rref = min(timeit.repeat(lambda: mod.rref_mod_p(M, args.size, p), number=1, repeat=args.repeat))
        t_mul = min(timeit.repeat(lambda: mod.poly_mul_mod_p(a, b, p), number=1, repeat=args.repeat))
        results[name] = (t_rref, t_mul)
        print(f"{name:>7}: rref {args.size}x{args.size} {t_rref * 1e3:8.2f} ms   poly mul {args.size}x{args.size} terms {t_mul * 1e3:8.2f} ms")
    if compiled is not None:
        assert compiled.rref_mod_p(M, args.size, p) == _kernels_py.rref_mod_p(M, args.size, p)
        assert compiled.poly_mul_mod_p(a, b, p) == _kernels_py.poly_mul_mod_p(a, b, p)
        py, cy = results["python"], results["cython"]
        print(f"speedup: rref {py[0] / cy[0]:.1f}x   poly mul {py[1] / cy[1]:.1f}x")


if __name__ == "__main__":
    main()
