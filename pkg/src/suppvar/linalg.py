"""Exact arithmetic over F_p and F_{p^e} and dense linear algebra on top of it.

Field elements are encoded as integers ("codes") in ``[0, q)``: the element
``c_0 + c_1 t + ... + c_{e-1} t^{e-1}`` of ``F_p[t]/(modulus)`` has code
``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``.  For ``e = 1`` the code is the residue
itself, and the prime field sits inside every extension with the same codes.

Matrices are ``numpy.int64`` arrays of codes.  All operations are pure: inputs
are never modified.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from suppvar import kernels

MAX_ORDER = 1 << 20

__all__ = [
    "SizeLimitExceeded",
    "check_size",
    "max_dim",
    "batched_rank",
    "FieldSpec",
    "NoSolution",
    "rank",
    "rref",
    "kernel_basis",
    "coordinate_map",
    "solve",
    "inverse",
    "column_basis",
    "extend_to_basis",
    "in_span",
    "is_prime",
]

_DEBUG = os.environ.get("SUPPVAR_DEBUG", "") == "1"


class NoSolution(ArithmeticError):
    """Raised by :func:`solve` when the system is inconsistent."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_divides(f: tuple[int, ...], g: tuple[int, ...], p: int) -> bool:
    """True iff the monic polynomial f divides g over F_p (little-endian)."""
    r = list(g)
    df = len(f) - 1
    while len(r) - 1 >= df:
        lead = r[-1] % p
        if lead:
            shift = len(r) - 1 - df
            for i, c in enumerate(f):
                r[shift + i] = (r[shift + i] - lead * c) % p
        r.pop()
    return not any(c % p for c in r)


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_divides(tuple(low) + (1,), modulus, p):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree e (little-endian)."""
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        low = tuple((code // p**i) % p for i in range(e))
        cand = low + (1,)
        if low[0] and _is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_{p^e} with a fixed defining polynomial.

    ``p`` must be an odd prime, ``1 <= e <= 4``.  ``modulus`` is the monic
    defining polynomial as little-endian coefficients (length ``e + 1``);
    omitted for ``e = 1`` and defaulted to the smallest irreducible otherwise.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        p, e = self.p, self.e
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not 1 <= e <= 4:
            raise ValueError(f"extension degree e={e} must lie in 1..4")
        if p**e > MAX_ORDER:
            raise ValueError(f"field of order {p}^{e} exceeds {MAX_ORDER}")
        if e == 1:
            object.__setattr__(self, "modulus", (0, 1))
            return
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(p, e))
            return
        mod = tuple(int(c) % p for c in self.modulus)
        if len(mod) == e:
            mod = mod + (1,)
        if len(mod) != e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_irreducible(mod, p):
            raise ValueError(f"modulus {mod} is reducible over F_{p}")
        object.__setattr__(self, "modulus", mod)

    # -- basic data -----------------------------------------------------

    @property
    def q(self) -> int:
        return self.p**self.e

    def __str__(self):
        return f"F_{self.p}" if self.e == 1 else f"F_{self.p}^{self.e}"

    def to_json(self) -> dict:
        d = {"p": self.p, "e": self.e}
        if self.e > 1:
            d["modulus"] = list(self.modulus)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        mod = d.get("modulus")
        return cls(int(d["p"]), int(d.get("e", 1)), tuple(mod) if mod else None)

    def extend(self, e: int) -> "FieldSpec":
        """The field F_{p^e} containing the prime field of self."""
        if e == self.e:
            return self
        if self.e != 1:
            raise ValueError("only prime fields can be extended")
        return FieldSpec(self.p, e)

    # -- tables (extension fields only) ---------------------------------

    @cached_property
    def _digits(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.e)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([self.p**i for i in range(self.e)], dtype=np.int64)

    @cached_property
    def _companion_powers(self) -> np.ndarray:
        e, p = self.e, self.p
        comp = np.zeros((e, e), dtype=np.int64)
        for i in range(e - 1):
            comp[i + 1, i] = 1
        comp[:, e - 1] = [(-c) % p for c in self.modulus[:e]]
        pows = [np.eye(e, dtype=np.int64)]
        for _ in range(e - 1):
            pows.append(comp @ pows[-1] % p)
        return np.stack(pows)

    @cached_property
    def _log_exp(self) -> tuple[np.ndarray, np.ndarray]:
        q, p = self.q, self.p
        gen = self.primitive_element
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        mult = self._mult_matrix(gen)
        v = np.zeros(self.e, dtype=np.int64)
        v[0] = 1
        for k in range(q - 1):
            c = int(v @ self._weights)
            exp[k] = c
            log[c] = k
            v = mult @ v % p
        return log, exp

    def _mult_matrix(self, a: int) -> np.ndarray:
        d = self._digits[a]
        return np.einsum("i,irs->rs", d, self._companion_powers) % self.p

    def _order(self, a: int) -> int:
        """Multiplicative order of a nonzero element, by repeated multiplication."""
        if self.e == 1:
            n, x = 1, a % self.p
            while x != 1:
                x = x * a % self.p
                n += 1
            return n
        mult = self._mult_matrix(a)
        one = np.zeros(self.e, dtype=np.int64)
        one[0] = 1
        v = mult @ one % self.p
        n = 1
        while not np.array_equal(v, one):
            v = mult @ v % self.p
            n += 1
        return n

    @cached_property
    def primitive_element(self) -> int:
        """Smallest code generating the multiplicative group."""
        q = self.q
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if self.e == 1:
                if all(pow(g, (q - 1) // r, q) != 1 for r in factors):
                    return g
            elif self._order(g) == q - 1:
                return g
        return 1  # q == 2 never happens (p odd)

    @cached_property
    def _inv_table(self) -> np.ndarray:
        if self.e == 1:
            t = np.zeros(self.p, dtype=np.int64)
            for a in range(1, self.p):
                t[a] = pow(a, -1, self.p)
            return t
        log, exp = self._log_exp
        t = np.zeros(self.q, dtype=np.int64)
        t[1:] = exp[(-log[1:]) % (self.q - 1)]
        return t

    # -- scalar/array arithmetic ----------------------------------------

    def asarray(self, data) -> np.ndarray:
        """Canonical int64 array from nested integers.

        Integers are interpreted as residues mod p (prime-field elements) when
        e = 1; for e > 1 they are taken as codes and must lie in [0, q).
        """
        a = np.array(data, dtype=np.int64)
        if self.e == 1:
            return a % self.p
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise ValueError("extension-field codes must lie in [0, q)")
        return a

    def embed(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def add(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + b) % self.p
        d = (self._digits[a] + self._digits[b]) % self.p
        return d @ self._weights

    def neg(self, a):
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        return ((-self._digits[a]) % self.p) @ self._weights

    def sub(self, a, b):
        if self.e == 1:
            return (np.asarray(a) - b) % self.p
        d = (self._digits[a] - self._digits[b]) % self.p
        return d @ self._weights

    def mul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        log, exp = self._log_exp
        res = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv_table[a]

    def scal(self, c: int, a) -> np.ndarray:
        return self.mul(np.asarray(a), int(c))

    def pow(self, a: int, n: int) -> int:
        if self.e == 1:
            return pow(int(a), n, self.p)
        if a == 0:
            return 0 if n > 0 else 1
        log, exp = self._log_exp
        return int(exp[(int(log[a]) * n) % (self.q - 1)])

    def root_of_unity(self, n: int) -> int:
        """A primitive n-th root of unity (requires n | q - 1)."""
        if (self.q - 1) % n:
            raise ValueError(f"{self} has no primitive {n}-th root of unity")
        return self.pow(self.primitive_element, (self.q - 1) // n)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.e == 1:
            return _matmul_mod(a, b, self.p)
        m, n = a.shape
        k = b.shape[1]
        big = np.einsum("abi,irs->arbs", self._digits[a], self._companion_powers)
        big = big.reshape(m * self.e, n * self.e) % self.p
        bvec = self._digits[b].transpose(0, 2, 1).reshape(n * self.e, k)
        prod = _matmul_mod(big, bvec, self.p).reshape(m, self.e, k)
        return np.einsum("aik,i->ak", prod, self._weights)

    def matpow(self, a: np.ndarray, n: int) -> np.ndarray:
        result = identity(self, a.shape[0])
        base = a
        while n:
            if n & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            n >>= 1
        return result

    def blowup(self, a: np.ndarray) -> np.ndarray:
        """The F_p-matrix of the F_q-linear map a (each entry an e x e block)."""
        if self.e == 1:
            return np.asarray(a, dtype=np.int64)
        m, n = a.shape
        big = np.einsum("abi,irs->arbs", self._digits[a], self._companion_powers)
        return big.reshape(m * self.e, n * self.e) % self.p

    # -- serialization --------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int((a // self.p**i) % self.p) for i in range(self.e))

    def from_coeffs(self, cs) -> int:
        if len(cs) != self.e:
            raise ValueError(f"expected {self.e} coefficients")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(cs))

    def scalar_to_json(self, a: int):
        return int(a) if self.e == 1 else list(self.coeffs(int(a)))

    def scalar_from_json(self, v) -> int:
        if isinstance(v, list):
            return self.from_coeffs(v)
        if self.e != 1:
            # a bare integer in an extension field means a prime-field element
            return int(v) % self.p
        return int(v) % self.p

    def matrix_to_json(self, m: np.ndarray) -> list:
        return [[self.scalar_to_json(x) for x in row] for row in np.asarray(m)]

    def matrix_from_json(self, rows) -> np.ndarray:
        return np.array(
            [[self.scalar_from_json(x) for x in row] for row in rows], dtype=np.int64
        ).reshape(len(rows), -1 if rows else 0)


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[-1]
    if n == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    bound = (p - 1) ** 2
    if n * bound < 2**53:
        # exact in double precision; uses BLAS
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    chunk = max(1, (2**62) // bound)
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for s in range(0, n, chunk):
        out = (out + a[..., s:s + chunk] @ b[s:s + chunk]) % p
    return out


# ---------------------------------------------------------------------------
# dense linear algebra


def identity(F: FieldSpec, n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def _rref_ext(F: FieldSpec, a: np.ndarray) -> list[int]:
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
        a[r, c:] = F.mul(a[r, c:], F.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows, c:] = F.sub(a[rows, c:], F.mul(col[rows][:, None], a[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(F: FieldSpec, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    a = np.array(m, dtype=np.int64, copy=True, order="C")
    if a.ndim != 2:
        raise ValueError("matrix expected")
    if a.size == 0:
        return a, []
    if F.e == 1:
        pivots = list(kernels.rref_modp(a, F.p))
    else:
        pivots = _rref_ext(F, a)
    return a, pivots


def rank(F: FieldSpec, m: np.ndarray) -> int:
    """Row rank over F."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if F.e == 1:
        if m.shape[0] > m.shape[1]:
            m = m.T
        return int(kernels.rank_modp(np.array(m, dtype=np.int64, order="C"), F.p))
    # F_q-rank is the F_p-rank of the blown-up matrix divided by e
    big = np.ascontiguousarray(F.blowup(m))
    return int(kernels.rank_modp(big, F.p)) // F.e


def kernel_basis(F: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Columns spanning the null space of m (standard RREF basis)."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(F, m)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = F.neg(r[i, f])
    return basis


def coordinate_map(F: FieldSpec, basis: np.ndarray) -> tuple[list[int], np.ndarray]:
    """Rows ``R`` and matrix ``C`` with ``v == basis @ (C @ v[R])`` on span(basis).

    ``basis`` must have independent columns.
    """
    k = basis.shape[1]
    if k == 0:
        return [], np.zeros((0, 0), dtype=np.int64)
    _, rows = rref(F, basis.T)
    if len(rows) != k:
        raise ValueError("basis columns are dependent")
    return rows, inverse(F, basis[rows])


def solve(F: FieldSpec, m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Some x with m @ x == b; raises :class:`NoSolution` if none exists.

    ``b`` may be a vector or a matrix (one system per column).  Free variables
    are set to zero, so the answer is deterministic.
    """
    m = np.asarray(m, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if m.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {m.shape} vs {b.shape}")
    n = m.shape[1]
    aug = np.concatenate([m, b], axis=1)
    r, pivots = rref(F, aug)
    if any(pc >= n for pc in pivots):
        raise NoSolution("inconsistent linear system")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    if _DEBUG:
        assert np.array_equal(F.matmul(m, x), b)
    return x[:, 0] if vec else x


def inverse(F: FieldSpec, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("square matrix expected")
    try:
        x = solve(F, m, np.eye(n, dtype=np.int64))
    except NoSolution:
        raise ZeroDivisionError("singular matrix") from None
    if rank(F, m) != n:
        raise ZeroDivisionError("singular matrix")
    return x


def column_basis(F: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Independent columns of m spanning its column space (first ones kept)."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[1] == 0:
        return m
    _, pivots = rref(F, m)
    return m[:, pivots]


def in_span(F: FieldSpec, basis: np.ndarray, v: np.ndarray) -> bool:
    if basis.shape[1] == 0:
        return not np.any(v)
    try:
        solve(F, basis, v)
    except NoSolution:
        return False
    return True


def extend_to_basis(F: FieldSpec, basis: np.ndarray, n: int) -> np.ndarray:
    """Extend independent columns to a basis of F^n by unit vectors, in order."""
    basis = np.asarray(basis, dtype=np.int64).reshape(n, -1)
    extra = complement_columns(F, basis, np.eye(n, dtype=np.int64))
    return np.concatenate([basis, extra], axis=1)


def complement_columns(F: FieldSpec, sub: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Greedy choice of candidate columns independent modulo span(sub).

    The pivot columns of rref([sub | candidates]) are exactly the greedy
    left-to-right choice.
    """
    n = candidates.shape[0]
    sub = np.asarray(sub, dtype=np.int64).reshape(n, -1)
    if candidates.shape[1] == 0:
        return candidates
    _, pivots = rref(F, np.concatenate([sub, candidates], axis=1))
    k = sub.shape[1]
    return candidates[:, [pc - k for pc in pivots if pc >= k]]


def batched_rank(F: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices with shape (batch, rows, cols)."""
    mats = np.asarray(mats, dtype=np.int64)
    if F.e != 1:
        return np.array([rank(F, m) for m in mats], dtype=np.int64)
    a = mats.copy() % F.p
    batch, nrows, ncols = a.shape
    inv = np.array([0] + [pow(i, -1, F.p) for i in range(1, F.p)], dtype=np.int64)
    used = np.zeros((batch, nrows), dtype=bool)
    ranks = np.zeros(batch, dtype=np.int64)
    idx = np.arange(batch)
    for j in range(ncols):
        cand = (a[:, :, j] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        b = idx[has]
        pr = piv[has]
        prow = a[b, pr] * inv[a[b, pr, j]][:, None] % F.p  # (nb, cols)
        factors = a[b, :, j].copy()  # (nb, rows)
        factors[np.arange(b.size), pr] = 0
        a[b] = (a[b] - factors[:, :, None] * prow[:, None, :]) % F.p
        used[b, pr] = True
        ranks[b] += 1
    return ranks


class SizeLimitExceeded(ValueError):
    pass


def max_dim() -> int:
    """Cap on matrix rows, from SUPPVAR_MAX_DIM (default 4096)."""
    return int(os.environ.get("SUPPVAR_MAX_DIM", "4096"))


def check_size(n: int, what: str = "matrix") -> None:
    if n > max_dim():
        raise SizeLimitExceeded(f"{what} of dimension {n} exceeds SUPPVAR_MAX_DIM={max_dim()}")
