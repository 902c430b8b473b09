# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for arithmetic over F_p (same API as _kernels_py)."""
from libc.stdlib cimport malloc, free

BACKEND = "cython"


def rref_mod_p(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long long f, inv, t
    cdef long long *m
    pivots = []
    if nrows == 0 or ncols == 0:
        return [], pivots
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                t = row[j] % p
                if t < 0:
                    t += p
                m[i * ncols + j] = t
        for c in range(ncols):
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
            inv = pow(m[r * ncols + c], p - 2, p)
            if inv != 1:
                for j in range(c, ncols):
                    m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r:
                    f = m[i * ncols + c]
                    if f != 0:
                        for j in range(c, ncols):
                            if m[r * ncols + j] != 0:
                                t = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                                if t < 0:
                                    t += p
                                m[i * ncols + j] = t
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
    return out, pivots


def poly_mul_mod_p(dict a, dict b, long long p):
    cdef dict out = {}
    cdef long long ca, cb, v
    cdef Py_ssize_t k, n
    for ea, ca_o in a.items():
        ca = ca_o
        n = len(ea)
        for eb, cb_o in b.items():
            cb = cb_o
            e = tuple([ea[k] + eb[k] for k in range(n)])
            v = (out.get(e, 0) + ca * cb) % p
            out[e] = v
    return {e: c for e, c in out.items() if c}
