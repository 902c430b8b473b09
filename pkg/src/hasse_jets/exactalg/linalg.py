"""Exact linear algebra over any field from ``fields`` or ``ratfunc``.

Matrices are lists of rows of field elements.  Prime-field matrices are
routed through the compiled kernel when it is available.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm

from .. import kernels
from .fields import Field, PrimeField, RationalField

__all__ = [
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "span_basis",
    "same_span",
    "in_span",
    "matmul",
    "matvec",
    "identity",
    "kron",
    "transpose",
    "LinearSystem",
]


def rref(M, field: Field, ncols: int | None = None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], []
    if isinstance(field, PrimeField):
        p = field.characteristic
        ints = [[field(v).v for v in r] for r in rows]
        red, piv = kernels.rref_mod_p(ints, ncols, p)
        return [[field(v) for v in r] for r in red], list(piv)
    rows = [[field(v) for v in r] for r in rows]
    pivots = []
    r = 0
    n = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        pr = [v * inv if v else v for v in rows[r]]
        rows[r] = pr
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows[:r], pivots


def rank(M, field: Field, ncols: int | None = None) -> int:
    return len(rref(M, field, ncols)[1])


def _primitive(v, field):
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    if not isinstance(field, RationalField):
        return v
    dens = [Fraction(x).denominator for x in v if x]
    if not dens:
        return v
    m = lcm(*dens)
    ints = [int(Fraction(x) * m) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [Fraction(x // g) for x in ints]


def kernel_basis(M, field: Field, ncols: int | None = None):
    """Basis of the right kernel, one vector per free column (ascending)."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, piv = rref(M, field, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(R, piv):
            if row[f]:
                v[pc] = -row[f]
        out.append(_primitive(v, field))
    return out


def solve(A, b, field: Field, ncols: int | None = None):
    """One solution x of A x = b (free variables set to 0), or None."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    if not aug:
        return [field.zero] * ncols
    R, piv = rref(aug, field, ncols + 1)
    if ncols in piv:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def span_basis(vectors, field: Field, dim: int):
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors, field, dim)[0]


def same_span(U, V, field: Field, dim: int) -> bool:
    return span_basis(U, field, dim) == span_basis(V, field, dim)


def in_span(v, U, field: Field, dim: int) -> bool:
    return rank(list(U) + [v], field, dim) == rank(U, field, dim) if U else not any(v)


def transpose(M):
    return [list(r) for r in zip(*M)]


def matmul(A, B, zero=0):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            s = zero
            for a, b in zip(row, col):
                if a and b:
                    s = s + a * b
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(A, v, zero=0):
    out = []
    for row in A:
        s = zero
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def identity(n: int, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def kron(A, B):
    """Kronecker product with A's index major."""
    out = []
    for arow in A:
        for brow in B:
            out.append([a * b for a in arow for b in brow])
    return out


@dataclass(frozen=True)
class LinearSystem:
    """A matrix over a field with row and column labels."""

    field: Field
    matrix: list
    row_labels: tuple = dc_field(default=())
    col_labels: tuple = dc_field(default=())

    def __post_init__(self):
        if self.row_labels and len(self.row_labels) != len(self.matrix):
            raise ValueError("row labels do not match the matrix")
        if self.col_labels and any(len(r) != len(self.col_labels) for r in self.matrix):
            raise ValueError("column labels do not match the matrix")

    @property
    def ncols(self) -> int:
        if self.col_labels:
            return len(self.col_labels)
        return len(self.matrix[0]) if self.matrix else 0

    def rank(self) -> int:
        return rank(self.matrix, self.field, self.ncols)

    def kernel(self):
        return kernel_basis(self.matrix, self.field, self.ncols)

    def rref(self):
        return rref(self.matrix, self.field, self.ncols)
