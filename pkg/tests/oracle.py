"""Independent reference computations over F_p.

Plain lists of ints, no numpy and nothing from suppvar.  Slow on purpose;
used to freeze expected values (``python tests/oracle.py``) and as a second
route in the property tests.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

FROZEN = Path(__file__).parent / "data" / "oracle_values.json"


def rref_rows(rows, p):
    """Row reduce a list of row vectors mod p in place; returns the nonzero rows."""
    rows = [[x % p for x in r] for r in rows]
    out = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        inv = pow(piv[col], p - 2, p)
        piv = [x * inv % p for x in piv]
        rows = [[(a - r[col] * b) % p for a, b in zip(r, piv)] if r[col] else r for r in rows]
        out = [[(a - r[col] * b) % p for a, b in zip(r, piv)] if r[col] else r for r in out]
        out.append(piv)
        col += 1
    return out


def rank(rows, p):
    return len(rref_rows(rows, p))


def nullspace(cols, n, p):
    """Basis of {v in F_p^n : sum v_j cols[j] = 0}; cols are the images of the unit vectors."""
    m = len(cols[0]) if cols else 0
    aug = [list(cols[j]) + [int(i == j) for i in range(n)] for j in range(n)]
    red = rref_rows(aug, p)
    return [r[m:] for r in red if not any(r[:m])]


def _sign(s, m):
    # ordered wedge x_s ^ x_m: count pairs a in s, b in m with a > b
    t = 0
    for a in range(16):
        if s >> a & 1:
            t += bin(m & ((1 << a) - 1)).count("1")
    return -1 if t % 2 else 1


def _mult(s, vec, c, p):
    """Left multiplication by the monomial s on a vector of the free module."""
    n = 1 << c
    out = [0] * len(vec)
    for pos, a in enumerate(vec):
        if not a:
            continue
        j, m = divmod(pos, n)
        if s & m:
            continue
        out[j * n + (s | m)] = (out[j * n + (s | m)] + _sign(s, m) * a) % p
    return out


def koszul_betti_oracle(c, steps, p=5):
    """Betti numbers of k over the exterior algebra on c generators.

    Tracks each syzygy as an explicit subspace of a free module; the Betti
    number is dim - dim(radical), and the next syzygy is the kernel of the
    cover map written out column by column.
    """
    n = 1 << c
    betti = [1]
    # first syzygy of k: the augmentation ideal inside one free generator
    space = [[int(i == m) for i in range(n)] for m in range(1, n)]
    while len(betti) <= steps:
        rad = [_mult(1 << i, v, c, p) for v in space for i in range(c)]
        rad = rref_rows(rad, p) if rad else []
        top = []
        span = list(rad)
        for v in space:
            if rank(span + [v], p) > len(span):
                span = rref_rows(span + [v], p)
                top.append(v)
        b = len(top)
        betti.append(b)
        cols = [_mult(s, r, c, p) for r in top for s in range(n)]
        space = nullspace(cols, b * n, p)
    return betti


def rank_mod_p(matrix, p):
    return rank([list(r) for r in matrix], p)


def freeze():
    vals = {"koszul_betti": {str(c): koszul_betti_oracle(c, 8) for c in (1, 2, 3)}}
    FROZEN.parent.mkdir(exist_ok=True)
    FROZEN.write_text(json.dumps(vals, indent=1, sort_keys=True) + "\n")
    return vals


if __name__ == "__main__":
    json.dump(freeze(), sys.stdout, sort_keys=True)
    print()
