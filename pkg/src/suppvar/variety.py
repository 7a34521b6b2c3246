"""Rank varieties: the lines [λ] over which a module is not free over k[u_λ]."""
from __future__ import annotations

from dataclasses import dataclass, field

from suppvar import linalg
from suppvar.algebra import Algebra, extend_scalars, projective_points
from suppvar.modrep import ModuleRep, direct_sum, extend_module
from suppvar.resolve import syzygy

MAX_POINT_SCAN = 10**7
VARIETY_SCHEMA = "suppvar.variety/1"


class FieldTooSmall(RuntimeError):
    """No rational point detects the non-projectivity; retry with larger e."""


def proj_points(F, c: int) -> list[tuple[int, ...]]:
    if c < 1:
        raise ValueError("c must be at least 1")
    if F.q**c > MAX_POINT_SCAN:
        raise OverflowError(f"{F.q}^{c} points exceed the scan limit")
    return projective_points(F, c)


def is_free_over_line(M: ModuleRep, lam) -> bool:
    """Free over k[u_λ] iff rank ρ(u_λ) = dim/2 (u_λ² = 0)."""
    if not any(lam):
        raise ValueError("λ must be nonzero")
    if M.dim % 2:
        return False
    return 2 * linalg.rank(M.field, M.rho_line(lam)) == M.dim


@dataclass(frozen=True)
class RankVariety:
    points: tuple[tuple[int, ...], ...]
    e: int
    fingerprint: str = field(default="", compare=False)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, lam):
        return tuple(lam) in set(self.points)

    @property
    def is_empty(self) -> bool:
        return not self.points

    def as_set(self) -> frozenset:
        return frozenset(self.points)

    def to_json(self, F=None) -> list:
        if F is None or F.e == 1:
            return [list(p) for p in self.points]
        return [[F.scalar_to_json(x) for x in p] for p in self.points]


def _over_degree(M: ModuleRep, e: int | None) -> ModuleRep:
    if e is None or e == M.field.e:
        return M
    big = extend_scalars(M.algebra, e)
    return extend_module(M, big)


def rank_variety(M: ModuleRep, e: int | None = None) -> RankVariety:
    N = _over_degree(M, e)
    F = N.field
    pts = tuple(lam for lam in proj_points(F, N.algebra.c) if not is_free_over_line(N, lam))
    return RankVariety(pts, F.e, M.fingerprint())


@dataclass
class TppReport:
    lhs: RankVariety
    rhs: tuple[tuple[int, ...], ...]
    holds: bool
    inclusion: bool
    only_lhs: list
    only_rhs: list
    label: str

    def to_json(self) -> dict:
        return {
            "lhs": [list(p) for p in self.lhs.points],
            "rhs": [list(p) for p in self.rhs],
            "holds": self.holds,
            "inclusion": self.inclusion,
            "witnesses": {
                "only_lhs": [list(p) for p in self.only_lhs],
                "only_rhs": [list(p) for p in self.only_rhs],
            },
            "label": self.label,
        }


def tpp_check(M: ModuleRep, N: ModuleRep, e: int | None = None) -> TppReport:
    """Compare RV(M ⊗ N) with RV(M) ∩ RV(N)."""
    from suppvar.tensor import has_symmetry, tensor

    a = M.algebra
    if a.hopf is None:
        raise ValueError("tpp_check needs a Hopf algebra")
    lhs = rank_variety(tensor(M, N), e)
    rhs = tuple(sorted(rank_variety(M, e).as_set() & rank_variety(N, e).as_set()))
    L, R = lhs.as_set(), set(rhs)
    label = "braided" if has_symmetry(a) else "empirical, braiding unverified"
    return TppReport(
        lhs, rhs, L == R, L <= R, sorted(L - R), sorted(R - L), label
    )


def realize(a: Algebra, points) -> ModuleRep:
    """⊕ Au_λ over the given points; its rank variety is exactly the points."""
    from suppvar.cohom import aulambda

    points = list(points)
    if not points:
        raise ValueError("empty point set: use a projective module")
    return direct_sum([aulambda(a, lam) for lam in points])


def projectivity_test(M: ModuleRep, e: int | None = None, cross_check: bool = True) -> bool:
    """Projective iff the projective cover is an isomorphism (Ω¹M = 0).

    With ``cross_check`` the rank variety at degree e must agree: a
    non-projective module with no non-free rational line raises FieldTooSmall.
    """
    projective = M.dim == 0 or syzygy(M).dim == 0
    if cross_check:
        rv = rank_variety(M, e)
        if projective and not rv.is_empty:
            raise AssertionError("projective module with a non-free line")
        if not projective and rv.is_empty:
            raise FieldTooSmall(
                f"module is not projective but free over every line defined over F_{M.field.p}^{rv.e}"
            )
    return projective


def variety_report(M: ModuleRep, e: int | None = None, steps: int = 8) -> dict:
    from suppvar.resolve import complexity_estimate, detect_periodicity, resolve

    rv = rank_variety(M, e)
    res = resolve(M, steps)
    cx = complexity_estimate(res.betti())
    period = detect_periodicity(M, steps, res) if cx.value == 1 else None
    F = _over_degree(M, e).field
    return {
        "schema": VARIETY_SCHEMA,
        "algebra_hash": M.algebra.hash,
        "module_fingerprint": M.fingerprint(),
        "field_degree": rv.e,
        "points": rv.to_json(F),
        "flags": {
            "projective": res.kernels[0].shape[1] == 0,
            "periodic": period.n if period else None,
            "complexity": cx.value,
        },
    }
