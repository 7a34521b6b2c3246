"""Pure-Python (numpy) fallback for the compiled elimination kernels.

Same signatures and results as ``suppvar._kernels``; used when the extension
is not built or when ``SUPPVAR_NO_EXT=1`` is set.
"""
import numpy as np


def rref_modp(a, p):
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(a, p):
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        below = a[r + 1:, c] * inv % p
        rows = np.flatnonzero(below)
        if rows.size:
            rows += r + 1
            a[rows, c:] = (a[rows, c:] - np.outer(below[rows - r - 1], a[r, c:])) % p
        r += 1
    return r
