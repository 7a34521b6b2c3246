"""Ext groups, cocycles on minimal resolutions, Yoneda products, line restrictions.

Classes in Ext^n(M, k) are functionals on the minimal P_n; they vanish off the
trivial-character summands and, since the resolution is minimal, every such
functional is a cocycle and none is a coboundary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from suppvar import linalg
from suppvar.algebra import Algebra, line_element, projective_points
from suppvar.modrep import (
    ModuleRep,
    character_projector,
    generated_submodule,
    isotypic_basis,
    regular_module,
    restrict_to_basis,
    trivial_module,
)
from suppvar.resolve import Resolution, map_from_projective, monomial_matrices, resolve

COCYCLE_SCHEMA = "suppvar.cocycle/1"


# ---------------------------------------------------------------------------
# Ext dimensions through the Hom complex


def _coboundary(res: Resolution, N: ModuleRep, n: int) -> np.ndarray:
    """Matrix of Hom(P_{n-1}, N) → Hom(P_n, N), f ↦ f ∘ d_n.

    Domain coordinates: for each summand of P_{n-1}, a basis of the matching
    isotypic part of N.  Codomain: generator images, stacked per summand of
    P_n (ambient N^{b_n}).
    """
    F, a = N.field, N.algebra
    nmono = 2**a.c
    d = res.differentials[n]
    pos = res.generator_positions(n)
    X = monomial_matrices(N)  # (2^c, N, N)
    cols = []
    for jp, chi in enumerate(res.terms[n - 1]):
        V = isotypic_basis(N, chi)
        k = V.shape[1]
        if k == 0:
            continue
        XV = F.matmul(X.reshape(nmono * N.dim, N.dim), V).reshape(nmono, N.dim, k)
        D = d[jp * nmono:(jp + 1) * nmono][:, pos]  # (2^c, b_n)
        out = F.matmul(XV.transpose(1, 2, 0).reshape(N.dim * k, nmono), D)
        out = out.reshape(N.dim, k, len(pos)).transpose(2, 0, 1).reshape(len(pos) * N.dim, k)
        cols.append(out)
    if not cols:
        return np.zeros((len(pos) * N.dim, 0), dtype=np.int64)
    return np.concatenate(cols, axis=1)


def hom_dim(res: Resolution, N: ModuleRep, n: int) -> int:
    return sum(isotypic_basis(N, chi).shape[1] for chi in res.terms[n])


def ext_dim(M: ModuleRep, N: ModuleRep, n: int, res: Resolution | None = None) -> int:
    """dim Ext^n(M, N) from the Hom complex of the minimal resolution of M."""
    if res is None:
        res = resolve(M, n + 1)
    if res.length < n + 1:
        raise ValueError(f"resolution window {res.length} too short for Ext^{n}")
    F = N.field
    h = hom_dim(res, N, n)
    r_in = linalg.rank(F, _coboundary(res, N, n)) if n > 0 else 0
    r_out = linalg.rank(F, _coboundary(res, N, n + 1))
    return h - r_in - r_out


# ---------------------------------------------------------------------------
# cocycles on (M, k)


def _trivial(a: Algebra) -> tuple:
    return a.characters()[0]


@dataclass
class Cocycle:
    """A class in Ext^degree(M, k): one coefficient per summand of P_degree."""

    res: Resolution
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64)
        terms = self.res.terms[self.degree]
        if self.coeffs.shape != (len(terms),):
            raise ValueError("one coefficient per projective summand required")
        triv = _trivial(self.res.algebra)
        for c, chi in zip(self.coeffs, terms):
            if c and chi != triv:
                raise ValueError("coefficients must vanish off trivial summands")

    @property
    def field(self):
        return self.res.module.field

    def functional(self) -> np.ndarray:
        """The map P_degree → k as a row vector."""
        res = self.res
        P = res.projective(self.degree)
        f = np.zeros(P.dim, dtype=np.int64)
        for j, p in enumerate(res.generator_positions(self.degree)):
            f[p] = self.coeffs[j]
        return f

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def ext_coords(self) -> list[int]:
        triv = _trivial(self.res.algebra)
        return [int(c) for c, chi in zip(self.coeffs, self.res.terms[self.degree]) if chi == triv]

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.res, self.degree, self.field.add(self.coeffs, other.coeffs))

    def scale(self, s: int) -> "Cocycle":
        return Cocycle(self.res, self.degree, self.field.scal(s, self.coeffs))

    def to_json(self) -> dict:
        F = self.field
        return {
            "schema": COCYCLE_SCHEMA,
            "algebra_hash": self.res.algebra.hash,
            "degree": self.degree,
            "coeffs": [F.scalar_to_json(c) for c in self.coeffs],
        }


def ext_basis(res: Resolution, n: int) -> list[Cocycle]:
    """Basis of Ext^n(M, k): indicator functionals of trivial summands."""
    triv = _trivial(res.algebra)
    out = []
    for j, chi in enumerate(res.terms[n]):
        if chi == triv:
            c = np.zeros(len(res.terms[n]), dtype=np.int64)
            c[j] = 1
            out.append(Cocycle(res, n, c))
    return out


def cocycle_from_ext_coords(res: Resolution, n: int, coords) -> Cocycle:
    basis = ext_basis(res, n)
    if len(coords) != len(basis):
        raise ValueError(f"Ext^{n} has dimension {len(basis)}, got {len(coords)} coefficients")
    F = res.module.field
    c = np.zeros(len(res.terms[n]), dtype=np.int64)
    for x, b in zip(coords, basis):
        c = F.add(c, F.scal(int(x) % F.p if F.e == 1 else int(x), b.coeffs))
    return Cocycle(res, n, c)


def cocycle_from_json(res: Resolution, d: dict) -> Cocycle:
    if d.get("algebra_hash") not in (None, res.algebra.hash):
        raise ValueError("cocycle belongs to a different algebra")
    F = res.module.field
    n = int(d["degree"])
    return Cocycle(res, n, np.array([F.scalar_from_json(x) for x in d["coeffs"]], dtype=np.int64))


def lift_chain_map(zeta: Cocycle, upto: int) -> list[np.ndarray]:
    """Chain map ζ_i: P_{m+i} → P_i (i = 0..upto) over ε: P_0 → k lifting ζ."""
    res = zeta.res
    F = zeta.field
    m = zeta.degree
    if res.length < m + upto:
        raise ValueError(f"resolution window {res.length} too short for degree {m + upto}")
    maps = []
    prev = zeta.functional()[None, :]  # P_m → k
    for i in range(upto + 1):
        src = m + i
        pos = res.generator_positions(src)
        target_mod = res.projective(i)
        if i == 0:
            rhs = prev[:, pos]
        else:
            rhs = F.matmul(prev, res.differentials[src][:, pos])
        if not pos:
            maps.append(np.zeros((target_mod.dim, 0), np.int64))
            prev = maps[-1]
            continue
        sol = linalg.solve(F, res.differentials[i], rhs)
        gens = []
        for j, chi in enumerate(res.terms[src]):
            gens.append(F.matmul(character_projector(target_mod, chi), sol[:, j]))
        zi = map_from_projective(target_mod, gens)
        maps.append(zi)
        prev = zi
    return maps


def yoneda(zeta: Cocycle, eta: Cocycle) -> Cocycle:
    """Product of degree m + n: η composed with the lift of ζ to degree n."""
    if zeta.res is not eta.res:
        raise ValueError("classes must live on the same resolution")
    res = zeta.res
    m, n = zeta.degree, eta.degree
    lift = lift_chain_map(zeta, n)[n]  # P_{m+n} → P_n
    f = zeta.field.matmul(eta.functional()[None, :], lift)[0]
    pos = res.generator_positions(m + n)
    return Cocycle(res, m + n, f[pos])


def graded_commutator(zeta: Cocycle, eta: Cocycle) -> Cocycle:
    """ζη - (-1)^{|ζ||η|} ηζ."""
    F = zeta.field
    ab = yoneda(zeta, eta)
    ba = yoneda(eta, zeta)
    sign = 1 if (zeta.degree * eta.degree) % 2 == 0 else -1
    return Cocycle(ab.res, ab.degree, F.sub(ab.coeffs, F.scal(sign % F.p, ba.coeffs)))


# ---------------------------------------------------------------------------
# restriction to k[u_λ]


@dataclass(frozen=True)
class LineRestriction:
    lam: tuple[int, ...]
    value: int

    @property
    def vanishes(self) -> bool:
        return self.value == 0


def restrict_to_line(zeta: Cocycle, lam, field=None) -> LineRestriction:
    """Pair ζ with a chain map from the periodic k[u_λ]-resolution of k.

    The chain map sends the generator 1 of the i-th copy of k[u] to v_i with
    ε(v_0) = 1 and d_i(v_i) = u v_{i-1}; the value is ζ(v_{2n}).  ``field``
    may be an extension of the resolution's field (λ then has coordinates
    there).
    """
    res = zeta.res
    if zeta.degree % 2:
        raise ValueError("restriction to a line needs an even-degree class")
    F = field or zeta.field
    a = res.algebra
    lam = line_element_coords(F, a.c, lam)
    v = linalg.solve(F, res.differentials[0], np.array([1], dtype=np.int64))
    for i in range(1, zeta.degree + 1):
        prev = res.projective(i - 1)
        u = _line_matrix(F, prev, lam)
        v = linalg.solve(F, res.differentials[i], F.matmul(u, v[:, None])[:, 0])
    val = int(F.matmul(zeta.functional()[None, :], v[:, None])[0, 0])
    return LineRestriction(lam, val)


def line_element_coords(F, c: int, lam) -> tuple[int, ...]:
    from suppvar.algebra import normalize_point

    if len(lam) != c:
        raise ValueError(f"λ must have {c} coordinates")
    return normalize_point(F, np.asarray(lam, dtype=np.int64) % F.q)


def _line_matrix(F, M: ModuleRep, lam) -> np.ndarray:
    out = np.zeros((M.dim, M.dim), dtype=np.int64)
    for i, li in enumerate(lam):
        if li:
            out = F.add(out, F.mul(int(li), M.action[f"x{i + 1}"]))
    return out


def zero_locus(zeta: Cocycle, field=None) -> list[tuple[int, ...]]:
    """Points [λ] of P^{c-1} where the restriction of ζ vanishes."""
    F = field or zeta.field
    c = zeta.res.algebra.c
    if zeta.is_zero():
        return projective_points(F, c)
    return [lam for lam in projective_points(F, c) if restrict_to_line(zeta, lam, F).vanishes]


# ---------------------------------------------------------------------------
# L_ζ and Au_λ


def lzeta(zeta: Cocycle) -> ModuleRep:
    """Kernel of the map Ω^{2n}k → k induced by a nonzero class of degree 2n."""
    res = zeta.res
    F = zeta.field
    n2 = zeta.degree
    if n2 % 2 or n2 == 0:
        raise ValueError("L_ζ needs a class of positive even degree")
    if zeta.is_zero():
        raise ValueError("L_ζ needs a nonzero class")
    omega = res.omega(n2)
    pi = res.covers[n2]  # P_{2n} → Ω^{2n}
    f = zeta.functional()
    psi = linalg.solve(F, pi.T, f)  # psi ∘ π = f
    K = linalg.kernel_basis(F, psi[None, :])
    return restrict_to_basis(omega, K)


def aulambda(a: Algebra, lam) -> ModuleRep:
    """The cyclic left ideal A (u_λ ⊗ e)."""
    if not a.is_skew or a.group is None:
        raise ValueError("Au_λ needs a skew algebra with its involution")
    u = line_element(a, lam)
    M, _ = generated_submodule(regular_module(a), u.vector()[:, None])
    if 2 * M.dim != a.dim:
        raise AssertionError("Au_λ must have half the dimension of A")
    return M


def trivial_resolution(a: Algebra, steps: int) -> Resolution:
    return resolve(trivial_module(a), steps)


def mlambda(a: Algebra, lam, sign: int) -> ModuleRep:
    """M_λ^± = A (u_λ ⊗ (e ± h)), the two halves of Au_λ."""
    if not a.is_skew or a.group is None:
        raise ValueError("M_λ^± needs a skew algebra with its involution")
    F = a.field
    u = line_element(a, lam).vector()
    h = a.group_element(a.h)
    v = a.mul(u, F.add(a.one(), F.scal(1 if sign > 0 else F.p - 1, h)))
    M, _ = generated_submodule(regular_module(a), v[:, None])
    return M
