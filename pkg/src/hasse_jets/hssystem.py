"""Level-capped iterative Hasse-Schmidt systems.

An ``HSSystem`` holds the algebras D_0, ..., D_N, the transition maps
pi(m, n): D_m -> D_n and the iteration maps delta(m, n): D_{m+n} -> D_m(D_n).
Every built-in basis is graded and prefix-stable, so each transition map is
the projection onto the first l_n coordinates.
"""
from __future__ import annotations

import json
from itertools import product
from math import comb, factorial

from . import _parallel
from .exactalg import QQ, Poly, PolyRing
from .exactalg.linalg import identity, kron
from .ffalg import (
    FFAlgebraMorphism,
    FFAlgebraScheme,
    base_ring,
    compose_schemes,
    graded_lex_key,
    morphism_check,
)
from .verdict import OK, Verdict

__all__ = [
    "HSSystem",
    "builtin",
    "check_iterativity",
    "p_polynomial",
    "check_p_identities",
    "beta_basis_change",
    "BUILTIN_NAMES",
    "operator_index",
]

BUILTIN_NAMES = ("Trivial", "HSD", "End", "DiffDiff", "HigherD")


class HSSystem:
    """A projective family D_0..D_N with transition and iteration matrices.

    ``pi_fn(m, n)`` and ``delta_fn(m, n)`` return matrices over the base ring
    (lists of rows; columns are images of source basis vectors).  They are
    evaluated lazily and cached.
    """

    def __init__(self, name: str, cap: int, schemes, pi_fn, delta_fn, A=None, meta=None):
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        if len(schemes) != cap + 1:
            raise ValueError("one algebra per level 0..cap is required")
        self.name = name
        self.cap = cap
        self.schemes = list(schemes)
        self.A = A or base_ring()
        self._pi_fn = pi_fn
        self._delta_fn = delta_fn
        self._pi: dict = {}
        self._delta: dict = {}
        self._composed: dict = {}
        self.meta = dict(meta or {})
        self.meta.setdefault("index", "linear")

    def __repr__(self):
        return f"HSSystem({self.name}, cap={self.cap})"

    @property
    def params(self) -> tuple:
        return self.A.names

    def rank(self, n: int) -> int:
        self._level(n)
        return self.schemes[n].rank

    def ranks(self) -> list[int]:
        return [s.rank for s in self.schemes]

    def scheme(self, n: int) -> FFAlgebraScheme:
        self._level(n)
        return self.schemes[n]

    def _level(self, *ns):
        for n in ns:
            if not 0 <= n <= self.cap:
                raise ValueError(f"level {n} is outside the cap 0..{self.cap}")

    def composed(self, m: int, n: int) -> FFAlgebraScheme:
        key = (m, n)
        s = self._composed.get(key)
        if s is None:
            s = compose_schemes(self.scheme(m), self.scheme(n))
            self._composed[key] = s
        return s

    def pi(self, m: int, n: int) -> FFAlgebraMorphism:
        self._level(m, n)
        if m < n:
            raise ValueError(f"pi({m}, {n}) needs m >= n")
        key = (m, n)
        f = self._pi.get(key)
        if f is None:
            f = FFAlgebraMorphism(self.schemes[m], self.schemes[n], self._pi_fn(m, n), name=f"pi({m},{n})")
            self._pi[key] = f
        return f

    def delta(self, m: int, n: int) -> FFAlgebraMorphism:
        self._level(m, n, m + n)
        key = (m, n)
        f = self._delta.get(key)
        if f is None:
            f = FFAlgebraMorphism(
                self.schemes[m + n], self.composed(m, n), self._delta_fn(m, n), name=f"delta({m},{n})"
            )
            self._delta[key] = f
        return f

    def is_prefix_projection(self, m: int, n: int) -> bool:
        """True when pi(m, n) keeps exactly the first l_n coordinates."""
        M = self.pi(m, n).matrix
        ln = self.rank(n)
        for i, row in enumerate(M):
            for j, c in enumerate(row):
                want = 1 if i == j else 0
                if c != want:
                    return False
        return len(M) == ln

    def with_delta(self, m: int, n: int, matrix) -> "HSSystem":
        """Copy of the system with one iteration matrix replaced (for testing)."""
        old = self._delta_fn

        def delta_fn(a, b):
            if (a, b) == (m, n):
                return matrix
            return old(a, b)

        out = HSSystem(self.name + "*", self.cap, self.schemes, self._pi_fn, delta_fn, self.A, self.meta)
        return out

    def truncate(self, cap: int) -> "HSSystem":
        if cap > self.cap:
            raise ValueError("cannot raise the cap of an existing system")
        return HSSystem(self.name, cap, self.schemes[: cap + 1], self._pi_fn, self._delta_fn, self.A, self.meta)

    # serialization ------------------------------------------------------
    def dump(self) -> dict:
        """Ranks, tables and every pi/delta matrix within the cap."""
        out = {
            "name": self.name,
            "cap": self.cap,
            "params": list(self.params),
            "meta": {k: v for k, v in self.meta.items() if isinstance(v, (str, int, list))},
            "schemes": [s.dump() for s in self.schemes],
            "pi": {},
            "delta": {},
        }
        for m in range(self.cap + 1):
            for n in range(m + 1):
                out["pi"][f"{m},{n}"] = self.pi(m, n).dump()["matrix"]
        for m in range(self.cap + 1):
            for n in range(self.cap + 1 - m):
                out["delta"][f"{m},{n}"] = self.delta(m, n).dump()["matrix"]
        return out

    def dumps(self) -> str:
        return json.dumps(self.dump(), sort_keys=True)

    @classmethod
    def load(cls, data) -> "HSSystem":
        if isinstance(data, str):
            data = json.loads(data)
        A = base_ring(data.get("params", ()))
        schemes = [FFAlgebraScheme.load(s) for s in data["schemes"]]
        pis = {tuple(int(x) for x in k.split(",")): v for k, v in data["pi"].items()}
        deltas = {tuple(int(x) for x in k.split(",")): v for k, v in data["delta"].items()}

        def parse(M):
            return [[A.parse(c) for c in row] for row in M]

        return cls(
            data["name"],
            data["cap"],
            schemes,
            lambda m, n: parse(pis[(m, n)]),
            lambda m, n: parse(deltas[(m, n)]),
            A,
            data.get("meta"),
        )


# ---------------------------------------------------------------- helpers

def _prefix(m: int, n: int, lm: int, ln: int):
    return [[1 if i == j else 0 for j in range(lm)] for i in range(ln)]


def _multi_indices(e: int, n: int):
    """Multi-indices of total degree <= n in graded lexicographic order."""
    idx = [a for a in product(range(n + 1), repeat=e) if sum(a) <= n]
    idx.sort(key=graded_lex_key)
    return idx


def _var_names(stem: str, e: int):
    return [stem] if e == 1 else [f"{stem}{i + 1}" for i in range(e)]


def _multinom(a, b) -> int:
    out = 1
    for x, y in zip(a, b):
        out *= comb(x, y)
    return out


# ---------------------------------------------------------------- built-ins

def _trivial(cap: int) -> HSSystem:
    one = FFAlgebraScheme(1, [[{0: 1}]], meta={"labels": ["1"], "kind": "local", "name": "S"})
    return HSSystem(
        "Trivial",
        cap,
        [one] * (cap + 1),
        lambda m, n: [[1]],
        lambda m, n: [[1]],
        meta={"builtin": "Trivial", "e": 1},
    )


def _hsd(e: int, cap: int) -> HSSystem:
    names = _var_names("eta", e)
    from .ffalg import truncated_quotient_scheme

    schemes = []
    for n in range(cap + 1):
        rels = [[0] * (n + 1) + [1] for _ in range(e)]
        schemes.append(
            truncated_quotient_scheme(
                names, rels, cap=n, meta={"kind": "local", "name": f"HSD{e}_{n}"}
            )
        )
    idx = [_multi_indices(e, n) for n in range(cap + 1)]
    pos = [{a: k for k, a in enumerate(ix)} for ix in idx]

    def delta_fn(m, n):
        src = idx[m + n]
        ln = len(idx[n])
        M = [[0] * len(src) for _ in range(len(idx[m]) * ln)]
        for col, alpha in enumerate(src):
            for beta in product(*[range(a + 1) for a in alpha]):
                rest = tuple(a - b for a, b in zip(alpha, beta))
                if sum(beta) <= m and sum(rest) <= n:
                    M[pos[m][beta] * ln + pos[n][rest]][col] += _multinom(alpha, beta)
        return M

    return HSSystem(
        f"HSD({e})",
        cap,
        schemes,
        lambda m, n: _prefix(m, n, len(idx[m]), len(idx[n])),
        delta_fn,
        meta={"builtin": "HSD", "e": e, "index": "linear", "basis": "monomial", "vars": names},
    )


def _end_indices(e: int, n: int, auto: bool):
    rng = range(-n, n + 1) if auto else range(n + 1)
    idx = list(product(rng, repeat=e))
    idx.sort(key=lambda a: (max((abs(x) for x in a), default=0), a))
    return idx


def _end(e: int, cap: int, auto: bool) -> HSSystem:
    idx = [_end_indices(e, n, auto) for n in range(cap + 1)]
    pos = [{a: k for k, a in enumerate(ix)} for ix in idx]
    schemes = []
    for n in range(cap + 1):
        l = len(idx[n])
        table = [[({i: 1} if i == j else {}) for j in range(l)] for i in range(l)]
        labels = ["s" + ",".join(str(x) for x in a) for a in idx[n]]
        schemes.append(
            FFAlgebraScheme(
                l, table, unit=[1] * l, meta={"labels": labels, "kind": "split", "name": f"End{e}_{n}", "indices": idx[n]}
            )
        )

    def delta_fn(m, n):
        src = pos[m + n]
        ln = len(idx[n])
        M = [[0] * len(idx[m + n]) for _ in range(len(idx[m]) * ln)]
        for bi, beta in enumerate(idx[m]):
            for gi, gamma in enumerate(idx[n]):
                s = tuple(a + b for a, b in zip(beta, gamma))
                M[bi * ln + gi][src[s]] = 1
        return M

    name = f"End({e}{', auto' if auto else ''})"
    return HSSystem(
        name,
        cap,
        schemes,
        lambda m, n: _prefix(m, n, len(idx[m]), len(idx[n])),
        delta_fn,
        meta={"builtin": "End", "e": e, "auto": auto, "indices": [list(map(list, ix)) for ix in idx]},
    )


def _diffdiff_indices(n: int):
    idx = [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]
    idx.sort(key=lambda p: (p[0] + p[1], p[0]))
    return idx


def _diffdiff(cap: int) -> HSSystem:
    idx = [_diffdiff_indices(n) for n in range(cap + 1)]
    pos = [{a: k for k, a in enumerate(ix)} for ix in idx]
    schemes = []
    for n in range(cap + 1):
        l = len(idx[n])
        table = [[{} for _ in range(l)] for _ in range(l)]
        for a, (i, j) in enumerate(idx[n]):
            for b, (i2, j2) in enumerate(idx[n]):
                if i == i2 and i + j + j2 <= n:
                    table[a][b] = {pos[n][(i, j + j2)]: 1}
        unit = [1 if j == 0 else 0 for (i, j) in idx[n]]
        labels = [f"f{i}" + ("" if j == 0 else ("*eta" if j == 1 else f"*eta^{j}")) for (i, j) in idx[n]]
        schemes.append(
            FFAlgebraScheme(l, table, unit=unit, meta={"labels": labels, "kind": "generic", "name": f"DiffDiff_{n}", "indices": idx[n]})
        )

    def delta_fn(m, n):
        ln = len(idx[n])
        src = idx[m + n]
        M = [[0] * len(src) for _ in range(len(idx[m]) * ln)]
        for col, (s, d) in enumerate(src):
            for i in range(0, min(s, m) + 1):
                k = s - i
                if k > n:
                    continue
                # (zeta + eps)^d in factor i of the outer and factor k of the inner algebra
                for a in range(d + 1):
                    b = d - a
                    if i + a <= m and k + b <= n:
                        M[pos[m][(i, a)] * ln + pos[n][(k, b)]][col] += comb(d, a)
        return M

    return HSSystem(
        "DiffDiff",
        cap,
        schemes,
        lambda m, n: _prefix(m, n, len(idx[m]), len(idx[n])),
        delta_fn,
        meta={"builtin": "DiffDiff", "e": 1, "indices": [list(map(list, ix)) for ix in idx]},
    )


def _higherd(e: int, cap: int) -> HSSystem:
    params = tuple(_var_names("c", e))
    A = base_ring(params)
    cs = [A.var(p) for p in params]
    idx = [_multi_indices(e, n) for n in range(cap + 1)]
    pos = [{a: k for k, a in enumerate(ix)} for ix in idx]
    eps = _var_names("eps", e)
    schemes = []
    for n in range(cap + 1):
        l = len(idx[n])
        table = [[{} for _ in range(l)] for _ in range(l)]
        for a, J in enumerate(idx[n]):
            for b, K in enumerate(idx[n]):
                if b < a:
                    table[a][b] = table[b][a]
                    continue
                d: dict = {}
                for I in product(*[range(min(x, y) + 1) for x, y in zip(J, K)]):
                    M = tuple(x + y - z for x, y, z in zip(J, K, I))
                    if sum(M) > n:
                        continue
                    coef = A.one
                    for t in range(e):
                        coef = coef * (factorial(I[t]) * comb(J[t], I[t]) * comb(K[t], I[t])) * cs[t] ** I[t]
                    k = pos[n][M]
                    d[k] = d.get(k, A.zero) + coef
                table[a][b] = {k: v for k, v in d.items() if v}
        labels = ["beta" + ("" if not any(J) else "_" + ",".join(map(str, J))) for J in idx[n]]
        labels[0] = "1"
        schemes.append(
            FFAlgebraScheme(l, table, A, meta={"labels": labels, "kind": "generic", "name": f"HigherD{e}_{n}"})
        )

    def delta_fn(m, n):
        src = idx[m + n]
        ln = len(idx[n])
        M = [[0] * len(src) for _ in range(len(idx[m]) * ln)]
        for col, K in enumerate(src):
            for Mi in product(*[range(k + 1) for k in K]):
                rest = tuple(k - x for k, x in zip(K, Mi))
                if sum(Mi) <= m and sum(rest) <= n:
                    M[pos[m][Mi] * ln + pos[n][rest]][col] += _multinom(K, Mi)
        return M

    return HSSystem(
        f"HigherD({e})",
        cap,
        schemes,
        lambda m, n: _prefix(m, n, len(idx[m]), len(idx[n])),
        delta_fn,
        A,
        meta={"builtin": "HigherD", "e": e, "index": "multi", "basis": "beta", "vars": eps},
    )


def builtin(kind: str, cap: int = 4, e: int = 1, auto: bool = False) -> HSSystem:
    """One of the built-in systems: Trivial, HSD, End, DiffDiff, HigherD."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if e < 1:
        raise ValueError("e must be positive")
    if kind == "Trivial":
        return _trivial(cap)
    if kind == "HSD":
        return _hsd(e, cap)
    if kind == "End":
        return _end(e, cap, auto)
    if kind == "DiffDiff":
        if e != 1:
            raise ValueError("DiffDiff is built for one derivation and one endomorphism")
        return _diffdiff(cap)
    if kind == "HigherD":
        return _higherd(e, cap)
    raise ValueError(f"unknown built-in system {kind!r}; expected one of {', '.join(BUILTIN_NAMES)}")


# ---------------------------------------------------------------- checks

def _mm(A, B, zero):
    if not A or not B:
        return [[] for _ in A]
    cols = list(zip(*B))
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        r = []
        for col in cols:
            s = zero
            for k, a in nz:
                b = col[k]
                if b:
                    s = s + a * b
            r.append(s)
        out.append(r)
    return out


def _eq(A, B) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb)) and len(A) == len(B)


def check_iterativity(sys: HSSystem) -> Verdict:
    """All unit, compatibility and associativity diagrams within the cap.

    The order is: levels and transition maps, unit laws, pi-compatibility,
    associativity, the derived square mixing pi and delta, then the
    morphism checks of every pi (surjective) and delta (closed embedding).
    The first failing diagram is reported.
    """
    N = sys.cap
    A = sys.A
    z, one = A.zero, A.one
    if sys.rank(0) != 1:
        return Verdict.fail("level-0", rank=sys.rank(0))
    for n in range(N + 1):
        if not _eq(sys.pi(n, n).matrix, identity(sys.rank(n), one, z)):
            return Verdict.fail("pi-identity", n=n)
    for l in range(N + 1):
        for m in range(l + 1):
            for n in range(m + 1):
                lhs = _mm(sys.pi(m, n).matrix, sys.pi(l, m).matrix, z)
                if not _eq(lhs, sys.pi(l, n).matrix):
                    return Verdict.fail("pi-composition", l=l, m=m, n=n)

    for m in range(N + 1):
        if not _eq(sys.delta(m, 0).matrix, identity(sys.rank(m), one, z)):
            return Verdict.fail("unit-law", m=m, n=0)
        if not _eq(sys.delta(0, m).matrix, identity(sys.rank(m), one, z)):
            return Verdict.fail("unit-law", m=0, n=m)

    def pi_compat(args):
        m, n, m2, n2 = args
        lhs = _mm(kron(sys.pi(m, m2).matrix, sys.pi(n, n2).matrix), sys.delta(m, n).matrix, z)
        rhs = _mm(sys.delta(m2, n2).matrix, sys.pi(m + n, m2 + n2).matrix, z)
        if not _eq(lhs, rhs):
            return Verdict.fail("pi-compatibility", source=[m, n], target=[m2, n2])
        return OK

    jobs = [
        (m, n, m2, n2)
        for m in range(N + 1)
        for n in range(N + 1 - m)
        for m2 in range(m + 1)
        for n2 in range(n + 1)
        if (m2, n2) != (m, n)
    ]
    for v in _parallel.pmap(pi_compat, jobs):
        if not v:
            return v

    def assoc(args):
        l, m, n = args
        I_l = identity(sys.rank(l), one, z)
        I_n = identity(sys.rank(n), one, z)
        lhs = _mm(kron(I_l, sys.delta(m, n).matrix), sys.delta(l, m + n).matrix, z)
        rhs = _mm(kron(sys.delta(l, m).matrix, I_n), sys.delta(l + m, n).matrix, z)
        if not _eq(lhs, rhs):
            return Verdict.fail("associativity", l=l, m=m, n=n)
        return OK

    jobs = [(l, m, n) for l in range(N + 1) for m in range(N + 1 - l) for n in range(N + 1 - l - m)]
    for v in _parallel.pmap(assoc, jobs):
        if not v:
            return v

    def square(args):
        m, n = args
        lhs = _mm(kron(identity(sys.rank(m), one, z), sys.pi(n + 1, n).matrix), sys.delta(m, n + 1).matrix, z)
        rhs = _mm(kron(sys.pi(m + 1, m).matrix, identity(sys.rank(n), one, z)), sys.delta(m + 1, n).matrix, z)
        if not _eq(lhs, rhs):
            return Verdict.fail("pi-delta-square", m=m, n=n)
        return OK

    jobs = [(m, n) for m in range(N) for n in range(N - m)]
    for v in _parallel.pmap(square, jobs):
        if not v:
            return v

    def morph(args):
        kind, m, n = args
        if kind == "pi":
            return morphism_check(sys.pi(m, n), surjective=True)
        return morphism_check(sys.delta(m, n), embedding=True)

    jobs = [("pi", m, m - 1) for m in range(1, N + 1)]
    jobs += [("delta", m, n) for m in range(N + 1) for n in range(N + 1 - m) if m and n]
    for v in _parallel.pmap(morph, jobs):
        if not v:
            return v
    return OK


# ---------------------------------------------------------------- P_m identities

_P_RING = PolyRing(QQ, ("X", "Y", "W"))


def p_polynomial(m: int, X=None, W=None) -> Poly:
    """P_m(X, W) = prod_{i<m} (X - i W), expanded; P_0 = 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    R = _P_RING
    X = R.var("X") if X is None else X
    W = R.var("W") if W is None else W
    out = X.ring.one
    for i in range(m):
        out = out * (X - W * i)
    return out


def check_p_identities(lmax: int) -> Verdict:
    """Sum and product expansions of P_l as exact identities for indices <= lmax."""
    R = _P_RING
    X, Y, W = R.gens()
    PX = [p_polynomial(k, X, W) for k in range(2 * lmax + 1)]
    PY = [p_polynomial(k, Y, W) for k in range(lmax + 1)]
    for l in range(lmax + 1):
        lhs = p_polynomial(l, X + Y, W)
        rhs = R.zero
        for m in range(l + 1):
            rhs = rhs + PX[m] * PY[l - m] * comb(l, m)
        if lhs != rhs:
            return Verdict.fail("sum-expansion", l=l)
    for n in range(lmax + 1):
        for m in range(lmax + 1):
            lhs = PX[n] * PX[m]
            rhs = R.zero
            for i in range(min(n, m) + 1):
                rhs = rhs + PX[m + n - i] * W ** i * (factorial(i) * comb(n, i) * comb(m, i))
            if lhs != rhs:
                return Verdict.fail("product-expansion", n=n, m=m)
    return OK


def beta_basis_change(sys: HSSystem, n: int | None = None, direction: str = "beta_to_monomial"):
    """Change of basis between the monomial basis eps^a and the beta basis.

    ``beta_to_monomial`` has the monomial coordinates of beta_J as column J;
    ``monomial_to_beta`` is its inverse.  Both are unitriangular over A.
    """
    if sys.meta.get("builtin") != "HigherD":
        raise ValueError("beta bases exist only for HigherD systems")
    n = sys.cap if n is None else n
    e = sys.meta["e"]
    A = sys.A
    idx = _multi_indices(e, n)
    pos = {a: k for k, a in enumerate(idx)}
    eps_ring = PolyRing(A.field, tuple(A.names) + tuple(sys.meta["vars"]))
    cs = [eps_ring.var(c) for c in A.names]
    es = [eps_ring.var(v) for v in sys.meta["vars"]]
    l = len(idx)
    B = [[A.zero] * l for _ in range(l)]
    k = len(A.names)
    for col, J in enumerate(idx):
        beta = eps_ring.one
        for t in range(e):
            beta = beta * p_polynomial(J[t], es[t], cs[t])
        for exp, c in beta.terms.items():
            mono = exp[k:]
            coef = eps_ring.monomial(exp[:k] + (0,) * e, c).change_ring(A)
            B[pos[mono]][col] = B[pos[mono]][col] + coef
    if direction == "beta_to_monomial":
        return B
    if direction != "monomial_to_beta":
        raise ValueError("direction must be 'beta_to_monomial' or 'monomial_to_beta'")
    # invert the unit upper-triangular matrix column by column
    inv = [[A.zero] * l for _ in range(l)]
    for col in range(l):
        x = [A.zero] * l
        x[col] = A.one
        for r in range(l - 1, -1, -1):
            s = A.one if r == col else A.zero
            for c2 in range(r + 1, l):
                if B[r][c2] and x[c2]:
                    s = s - B[r][c2] * x[c2]
            x[r] = s
        for r in range(l):
            inv[r][col] = x[r]
    return inv


def operator_index(sys: HSSystem, family: int, order: int) -> tuple[int, int]:
    """(level, basis index) of the operator D{family, order} of a built-in system.

    Family i of HSD_e / HigherD_e is the i-th direction (multi-index order*e_i);
    for End_e it is sigma_i^order; for DiffDiff family 1 is the derivation and
    family 2 the endomorphism.
    """
    kind = sys.meta.get("builtin")
    e = sys.meta.get("e", 1)
    if kind in ("HSD", "HigherD", "End"):
        if not 1 <= family <= e:
            raise ValueError(f"{sys.name} has operator families 1..{e}, not {family}")
        if kind == "End":
            alpha = tuple(order if t == family - 1 else 0 for t in range(e))
            level = abs(order)
            if order < 0 and not sys.meta.get("auto"):
                raise ValueError("negative powers need the automorphism End system")
            idx = [tuple(a) for a in sys.meta["indices"][level]]
        else:
            if order < 0:
                raise ValueError("operator orders are non-negative")
            alpha = tuple(order if t == family - 1 else 0 for t in range(e))
            level = order
            idx = _multi_indices(e, level)
    elif kind == "DiffDiff":
        if family not in (1, 2) or order < 0:
            raise ValueError("DiffDiff has families 1 (derivation) and 2 (endomorphism)")
        alpha = (0, order) if family == 1 else (order, 0)
        level = order
        idx = _diffdiff_indices(level)
    else:
        raise ValueError(f"{sys.name} has no named operators")
    if level > sys.cap:
        raise ValueError(f"operator order {order} exceeds the cap {sys.cap}")
    return level, idx.index(alpha)
