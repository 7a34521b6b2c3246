# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels over prime fields."""

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(cnp.int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` in place to reduced row echelon form mod ``p``.

    Entries must already lie in ``[0, p)``. Returns the pivot columns.
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t f, inv, tmp
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, n):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(cnp.int64_t[:, ::1] a, int64_t p):
    """Rank mod ``p`` by forward elimination only; destroys ``a``."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t f, inv, tmp
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod(a[r, c], p)
        for i in range(r + 1, m):
            f = a[i, c]
            if f == 0:
                continue
            f = (p - f) * inv % p
            for j in range(c, n):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        r += 1
    return r
