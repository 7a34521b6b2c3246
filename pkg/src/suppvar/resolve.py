"""Minimal projective resolutions over Λ(c) ⋊ G.

Every indecomposable projective is P(χ) = A e_χ for a character χ of G, of
dimension 2^c, so a projective is recorded as a list of characters and a
module map out of it by the images of the generators e_χ.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb

import numpy as np

from suppvar import linalg
from suppvar.algebra import monomials
from suppvar.modrep import (
    ModuleRep,
    direct_sum,
    is_isomorphic,
    isotypic_basis,
    projective_module,
    radical_basis,
    restrict_to_basis,
    zero_module,
)

DEFAULT_STEPS = 8
RESOLUTION_SCHEMA = "suppvar.resolution/1"


def monomial_matrices(M: ModuleRep) -> np.ndarray:
    """ρ(x_S) for the monomials S of Λ in basis order, shape (2^c, n, n)."""
    F, a = M.field, M.algebra
    out = []
    for mono in monomials(a.c):
        m = np.eye(M.dim, dtype=np.int64)
        for i in mono:
            m = F.matmul(m, M.action[f"x{i + 1}"])
        out.append(m)
    return np.stack(out) if out else np.zeros((0, M.dim, M.dim), np.int64)


def map_from_projective(target: ModuleRep, gens: list[np.ndarray]) -> np.ndarray:
    """Matrix of ⊕P(χ_j) → target sending the j-th generator e_χ to gens[j].

    Each gens[j] must lie in the χ_j-eigenspace of the target.
    """
    F = target.field
    nmono = 2**target.algebra.c
    if not gens:
        return np.zeros((target.dim, 0), dtype=np.int64)
    X = monomial_matrices(target)  # (2^c, n, n)
    V = np.stack(gens, axis=1)  # (n, b)
    imgs = F.matmul(X.reshape(nmono * target.dim, target.dim), V)
    imgs = imgs.reshape(nmono, target.dim, len(gens))  # S, row, j
    return imgs.transpose(1, 2, 0).reshape(target.dim, len(gens) * nmono)


def projective_sum(a, chars: list[tuple]) -> ModuleRep:
    if not chars:
        return zero_module(a)
    return direct_sum([projective_module(a, chi) for chi in chars])


def projective_cover(M: ModuleRep) -> tuple[list[tuple], np.ndarray]:
    """(characters of P_0, cover matrix P_0 → M).

    Lifts of a basis of top M are taken inside the isotypic components, so
    each defines a module map from the matching P(χ).
    """
    a, F = M.algebra, M.field
    if not a.is_skew:
        raise ValueError("projective covers need a skew exterior algebra")
    current = radical_basis(M)
    chars, gens = [], []
    for chi in a.characters():
        E = isotypic_basis(M, chi)
        if E.shape[1] == 0:
            continue
        C = linalg.complement_columns(F, current, E)
        for k in range(C.shape[1]):
            chars.append(chi)
            gens.append(C[:, k])
        current = np.concatenate([current, C], axis=1)
    pi = map_from_projective(M, gens)
    return chars, pi


def syzygy(M: ModuleRep) -> ModuleRep:
    """Ω¹M, the kernel of the projective cover."""
    chars, pi = projective_cover(M)
    P = projective_sum(M.algebra, chars)
    K = linalg.kernel_basis(M.field, pi)
    return restrict_to_basis(P, K)


@dataclass
class Resolution:
    module: ModuleRep
    terms: list[list[tuple]] = field(default_factory=list)
    differentials: list[np.ndarray] = field(default_factory=list)  # d_0: P_0 → M
    covers: list[np.ndarray] = field(default_factory=list)  # π_n: P_n → Ω^n
    kernels: list[np.ndarray] = field(default_factory=list)  # Ω^{n+1} inside P_n
    _omegas: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def algebra(self):
        return self.module.algebra

    def projective(self, n: int) -> ModuleRep:
        return projective_sum(self.algebra, self.terms[n])

    def omega(self, n: int) -> ModuleRep:
        """Ω^n M as a submodule of P_{n-1} (Ω^0 = M)."""
        if n == 0:
            return self.module
        if n not in self._omegas:
            self._omegas[n] = restrict_to_basis(self.projective(n - 1), self.kernels[n - 1])
        return self._omegas[n]

    def generator_positions(self, n: int) -> list[int]:
        """Index inside P_n of the generator e_χ of each summand."""
        return [j * 2**self.algebra.c for j in range(len(self.terms[n]))]

    def betti(self) -> "BettiSequence":
        nb = [len(t) for t in self.terms]
        return BettiSequence(nb, [b * 2**self.algebra.c for b in nb], self.algebra.c)


def resolve(M: ModuleRep, steps: int = DEFAULT_STEPS) -> Resolution:
    """Minimal resolution window P_0, ..., P_steps."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    F = M.field
    res = Resolution(M)
    current = M
    incl = np.eye(M.dim, dtype=np.int64)
    for n in range(steps + 1):
        if current.dim == 0:
            chars, pi = [], np.zeros((0, 0), np.int64)
        else:
            chars, pi = projective_cover(current)
        linalg.check_size(len(chars) * 2**M.algebra.c, f"P_{n}")
        P = projective_sum(M.algebra, chars)
        res.terms.append(chars)
        res.covers.append(pi)
        res.differentials.append(
            F.matmul(incl, pi) if pi.size else np.zeros((incl.shape[0], P.dim), np.int64)
        )
        K = linalg.kernel_basis(F, pi) if P.dim else np.zeros((0, 0), np.int64)
        res.kernels.append(K)
        if n < steps:
            current = restrict_to_basis(P, K) if K.shape[1] else zero_module(M.algebra)
            res._omegas[n + 1] = current
            incl = K
    return res


def check_resolution(res: Resolution) -> dict:
    """Complex, exactness and minimality checks at every computed degree."""
    F = res.module.field
    complex_ok = exact_ok = minimal_ok = True
    d = res.differentials
    for n in range(len(d) - 1):
        if d[n].size and d[n + 1].size and np.any(F.matmul(d[n], d[n + 1])):
            complex_ok = False
        dimP = d[n].shape[1]
        if linalg.rank(F, d[n]) + linalg.rank(F, d[n + 1]) != dimP:
            exact_ok = False
        P = res.projective(n)
        if P.dim:
            R = radical_basis(P)
            r0 = linalg.rank(F, R)
            if linalg.rank(F, np.concatenate([R, d[n + 1]], axis=1)) != r0:
                minimal_ok = False
    if linalg.rank(F, d[0]) != res.module.dim:
        exact_ok = False
    return {"complex": complex_ok, "exact": exact_ok, "minimal": minimal_ok}


@dataclass
class BettiSequence:
    b: list[int]
    lengths: list[int]
    c: int


@dataclass
class ComplexityEstimate:
    value: int | None  # None means Inconclusive
    window: int
    certification: str  # "exact-polynomial-tail" or "heuristic"

    @property
    def inconclusive(self) -> bool:
        return self.value is None


def complexity_estimate(betti: BettiSequence) -> ComplexityEstimate:
    """Growth rate of b_n read off from vanishing finite differences.

    The tail is the last two thirds of the window; complexity d means the
    d-th differences vanish there (constant tail: d = 1).
    """
    b = list(betti.b)
    if len(b) < 6:
        raise ValueError("complexity needs a window of at least 6 terms")
    if any(x == 0 for x in b):
        return ComplexityEstimate(0, len(b), "exact-polynomial-tail")
    tail = np.array(b[len(b) // 3:], dtype=np.int64)
    for d in range(1, betti.c + 1):
        diff = np.diff(tail, n=d)
        if diff.size < 2:
            break
        if not np.any(diff):
            return ComplexityEstimate(d, len(b), "exact-polynomial-tail")
    return ComplexityEstimate(None, len(b), "heuristic")


@dataclass
class Period:
    n: int
    witness: np.ndarray


def detect_periodicity(M: ModuleRep, n_max: int = 8, res: Resolution | None = None):
    """Least n <= n_max with Ω^n M ≅ M, else None."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if M.dim == 0:
        return None
    if res is None or res.length < n_max - 1:
        res = resolve(M, n_max - 1)
    unknown = False
    for n in range(1, n_max + 1):
        if n - 1 < len(res.kernels) and res.kernels[n - 1].shape[1] == 0:
            return None
        om = res.omega(n)
        if om.dim != M.dim:
            continue
        verdict = is_isomorphic(om, M)
        if verdict.__class__.__name__ == "Yes":
            return Period(n, verdict.witness)
        if verdict.__class__.__name__ == "Unknown":
            unknown = True
    if unknown:
        warnings.warn("periodicity undecided: isomorphism test inconclusive", RuntimeWarning)
    return None


def koszul_betti(c: int, n: int) -> int:
    """Betti numbers of the trivial module over Λ(c)."""
    return comb(n + c - 1, c - 1)


def resolution_report(res: Resolution, period=None, complexity=None) -> dict:
    a = res.algebra
    bet = res.betti()
    out = {
        "schema": RESOLUTION_SCHEMA,
        "algebra_hash": a.hash,
        "module_fingerprint": res.module.fingerprint(),
        "steps": res.length,
        "terms": [[list(chi) for chi in t] for t in res.terms],
        "betti": bet.b,
        "lengths": bet.lengths,
        "period": period.n if period else None,
    }
    if complexity is not None:
        out["complexity"] = {
            "value": complexity.value,
            "window": complexity.window,
            "certification": complexity.certification,
        }
    out["flags"] = check_resolution(res)
    return out
