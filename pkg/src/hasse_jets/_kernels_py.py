"""Pure-Python reference kernels for arithmetic over F_p.

The compiled twin lives in ``_kernels.pyx`` and must agree with these
functions exactly; ``hasse_jets.kernels`` picks one at import time.
"""
from __future__ import annotations

__all__ = ["rref_mod_p", "poly_mul_mod_p", "BACKEND"]

BACKEND = "python"


def rref_mod_p(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of an integer matrix modulo a prime.

    Returns the nonzero reduced rows and the pivot column of each.
    """
    m = [[v % p for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def poly_mul_mod_p(a: dict, b: dict, p: int) -> dict:
    """Product of two sparse polynomials {exponent tuple: int} modulo p."""
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = (get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}
