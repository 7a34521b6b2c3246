import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from suppvar import linalg
from suppvar.cohom import aulambda, mlambda
from suppvar.experiment import builtin_algebra
from suppvar.modrep import (
    ModuleError,
    ModuleRep,
    No,
    Yes,
    character_module,
    conjugate,
    direct_sum,
    dual,
    fitting_decompose,
    hom_basis,
    is_homomorphism,
    is_isomorphic,
    module_from_json,
    projective_module,
    quotient,
    regular_module,
    restrict_to_exterior,
    simple_module,
    socle_characters,
    submodule,
    top_characters,
    trivial_module,
    twist,
)

H4 = builtin_algebra("h4")
SIGN2 = builtin_algebra("sign:2")
C4 = builtin_algebra("cyclic:1:4:2")


def _sign(a):
    return simple_module(a, a.sign_character())


def random_invertible(F, n, rng):
    while True:
        P = rng.integers(0, F.q, size=(n, n))
        if linalg.rank(F, P) == n:
            return P


def indecomposables(a):
    out = [simple_module(a, chi) for chi in a.characters()]
    for lam in [(1, 0), (0, 1), (1, 1), (1, 2)]:
        out += [mlambda(a, lam, 1), mlambda(a, lam, -1)]
    return out


SIGN2_INDEC = indecomposables(SIGN2)


def test_trivial_and_sign_over_h4():
    k, S = trivial_module(H4), _sign(H4)
    assert np.array_equal(k.rho("x1"), [[0]]) and np.array_equal(k.rho("g1"), [[1]])
    assert np.array_equal(S.rho("g1"), [[4]])


def test_character_of_order_four():
    M = character_module(C4, [2])
    assert M.dim == 1
    with pytest.raises(ModuleError):
        character_module(H4, [2])


def test_regular_module_exterior():
    from suppvar.algebra import make_exterior

    a = make_exterior(1, H4.field)
    R = regular_module(a)
    assert R.dim == 2
    assert np.array_equal(R.rho("x1"), [[0, 0], [1, 0]])
    assert regular_module(H4).dim == 4
    regular_module(SIGN2).check_relations()


def test_malformed_module_reason():
    bad = {"x1": np.array([[0, 0], [1, 1]]), "g1": np.array([[1, 0], [0, 4]])}
    with pytest.raises(ModuleError) as exc:
        ModuleRep(H4, bad)
    assert exc.value.reason == "relation x1^2 violated"


def test_module_json_roundtrip():
    M = aulambda(SIGN2, (1, 2))
    N = module_from_json(SIGN2, M.to_json())
    assert N.fingerprint() == M.fingerprint()
    d = M.to_json()
    d["algebra_hash"] = "0" * 16
    with pytest.raises(ModuleError):
        module_from_json(SIGN2, d)


def test_duals():
    k, S = trivial_module(H4), _sign(H4)
    assert isinstance(is_isomorphic(dual(k), k), Yes)
    assert isinstance(is_isomorphic(dual(S), S), Yes)


def test_twist_by_group_element():
    S = _sign(H4)
    assert isinstance(is_isomorphic(twist(S, (1,)), S), Yes)


def test_twist_moves_lines():
    # the linear automorphism swapping x1 and x2 carries Au(1,0) to Au(0,1)
    swap = np.array([[0, 1], [1, 0]])
    M = twist(aulambda(SIGN2, (1, 0)), swap)
    assert isinstance(is_isomorphic(M, aulambda(SIGN2, (0, 1))), Yes)


def test_hom_dims():
    k, S = trivial_module(H4), _sign(H4)
    assert hom_basis(k, k).dim == 1
    assert hom_basis(k, S).dim == 0
    assert hom_basis(regular_module(H4), k).dim == 1


def test_hom_basis_elements_are_homs():
    M, N = aulambda(SIGN2, (1, 0)), regular_module(SIGN2)
    H = hom_basis(M, N)
    for i in range(H.dim):
        e = [int(i == j) for j in range(H.dim)]
        assert is_homomorphism(M, N, H.element(e))


def test_isomorphism_examples():
    rng = np.random.default_rng(3)
    M = aulambda(SIGN2, (1, 3))
    P = random_invertible(M.field, M.dim, rng)
    r = is_isomorphic(M, conjugate(M, P))
    assert isinstance(r, Yes)
    W = r.witness
    assert is_homomorphism(M, conjugate(M, P), W) and linalg.rank(M.field, W) == M.dim
    r = is_isomorphic(trivial_module(H4), _sign(H4))
    assert isinstance(r, No) and "top" in r.reason
    r = is_isomorphic(aulambda(SIGN2, (1, 0)), aulambda(SIGN2, (0, 1)))
    assert isinstance(r, No) and "rank-variety" in r.reason


def test_fitting_examples():
    r = fitting_decompose(direct_sum([trivial_module(H4), _sign(H4)]))
    assert r.dims == [1, 1] and r.certainty == "Certified"
    r = fitting_decompose(regular_module(H4))
    assert r.dims == [2, 2]
    tops = sorted(tuple(sorted(top_characters(s).items())) for s in r.summands)
    assert tops == [(((0,), 1),), (((1,), 1),)]


def test_mlambda_indecomposable():
    for sgn in (1, -1):
        r = fitting_decompose(mlambda(SIGN2, (1, 1), sgn))
        assert r.dims == [2] and r.certainty == "Certified"


def test_aulambda_splits_into_signed_halves():
    M = aulambda(SIGN2, (1, 4))
    r = fitting_decompose(M)
    assert r.dims == [2, 2]
    halves = [mlambda(SIGN2, (1, 4), s) for s in (1, -1)]
    for part in r.summands:
        assert any(isinstance(is_isomorphic(part, h), Yes) for h in halves)


def test_submodule_and_quotient():
    R = regular_module(H4)
    rad = submodule(R, R.rho("x1"))
    assert rad.dim == 2
    Q = quotient(R, R.rho("x1"))
    assert Q.dim == 2
    assert sum(top_characters(Q).values()) == 2


def test_non_invariant_subspace_rejected():
    R = regular_module(H4)
    # the span of the unit alone is not a submodule
    with pytest.raises(ModuleError):
        from suppvar.modrep import restrict_to_basis

        restrict_to_basis(R, np.eye(4, dtype=np.int64)[:, :1])


def test_socle_of_projective():
    P = projective_module(SIGN2, (0,))
    assert sum(socle_characters(P).values()) == 1


@given(st.integers(0, len(SIGN2_INDEC) - 1), st.integers(0, len(SIGN2_INDEC) - 1), st.integers(0, 2**32 - 1))
def test_hom_dim_conjugation_invariant(i, j, seed):
    M, N = SIGN2_INDEC[i], SIGN2_INDEC[j]
    P = random_invertible(N.field, N.dim, np.random.default_rng(seed))
    assert hom_basis(M, N).dim == hom_basis(M, conjugate(N, P)).dim


@given(st.integers(0, len(SIGN2_INDEC) - 1))
def test_dual_involutive(i):
    M = SIGN2_INDEC[i]
    assert isinstance(is_isomorphic(dual(dual(M)), M), Yes)


@given(st.lists(st.integers(0, len(SIGN2_INDEC) - 1), min_size=2, max_size=4, unique=True), st.integers(0, 99))
def test_krull_schmidt(idx, seed):
    parts = [SIGN2_INDEC[i] for i in idx]
    parts = [m for n, m in enumerate(parts) if not any(isinstance(is_isomorphic(m, o), Yes) for o in parts[:n])]
    r = fitting_decompose(direct_sum(parts), seed=seed)
    assert sorted(r.dims) == sorted(m.dim for m in parts)


@given(st.integers(0, len(SIGN2_INDEC) - 1), st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any))
def test_line_action_rank_bound(i, lam):
    M = restrict_to_exterior(SIGN2_INDEC[i])
    assert linalg.rank(M.field, M.rho_line(lam)) <= M.dim // 2
