import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from suppvar import linalg
from suppvar.algebra import make_exterior, projective_points
from suppvar.cohom import (
    Cocycle,
    aulambda,
    cocycle_from_ext_coords,
    cocycle_from_json,
    ext_basis,
    ext_dim,
    graded_commutator,
    lzeta,
    restrict_to_line,
    trivial_resolution,
    yoneda,
    zero_locus,
)
from suppvar.experiment import builtin_algebra
from suppvar.linalg import FieldSpec
from suppvar.modrep import trivial_module
from suppvar.resolve import resolve
from suppvar.variety import rank_variety

F5 = FieldSpec(5)
H4 = builtin_algebra("h4")
SIGN2 = builtin_algebra("sign:2")
RES_H4 = trivial_resolution(H4, 6)
RES_S2 = trivial_resolution(SIGN2, 6)
LAMBDA2 = make_exterior(2, F5)
RES_L2 = trivial_resolution(LAMBDA2, 5)
POINTS = projective_points(F5, 2)


def _evaluation_matrix(res, lines):
    """Row per line: restriction values of the Ext^2 basis classes."""
    basis = ext_basis(res, 2)
    return np.array([[restrict_to_line(z, lam).value for z in basis] for lam in lines], dtype=np.int64)


EV = _evaluation_matrix(RES_S2, POINTS)


def test_ext_examples():
    k = trivial_module(H4)
    assert ext_dim(k, k, 1, RES_H4) == 0
    assert ext_dim(k, k, 2, RES_H4) == 1
    assert ext_dim(trivial_module(SIGN2), trivial_module(SIGN2), 2, RES_S2) == 3


def test_ext_window_checked():
    res = trivial_resolution(H4, 2)
    with pytest.raises(ValueError):
        ext_dim(res.module, res.module, 2, res)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_even_part_matches_exterior(c):
    a = builtin_algebra(f"sign:{c}")
    k = trivial_module(a)
    res = resolve(k, 5)
    for n in range(5):
        expect = comb(n + c - 1, c - 1) if n % 2 == 0 else 0
        assert ext_dim(k, k, n, res) == expect


def test_left_unit():
    one = Cocycle(RES_S2, 0, [1])
    for n in (1, 2, 3):
        for z in ext_basis(RES_S2, n):
            assert np.array_equal(yoneda(one, z).coeffs, z.coeffs)
    one = Cocycle(RES_L2, 0, [1])
    for z in ext_basis(RES_L2, 1):
        assert np.array_equal(yoneda(one, z).coeffs, z.coeffs)


def test_odd_squares_nonzero_over_exterior():
    # polynomial, not exterior: y^2 survives in odd characteristic
    for z in ext_basis(RES_L2, 1):
        assert not yoneda(z, z).is_zero()


def test_odd_classes_commute_over_exterior():
    y1, y2 = ext_basis(RES_L2, 1)
    assert np.array_equal(yoneda(y1, y2).coeffs, yoneda(y2, y1).coeffs)


@pytest.mark.parametrize("m,n", [(0, 1), (1, 2), (2, 2), (0, 3), (2, 3)])
def test_even_commutators_vanish_over_exterior(m, n):
    for z, e in itertools.product(ext_basis(RES_L2, m), ext_basis(RES_L2, n)):
        assert graded_commutator(z, e).is_zero()


def test_restriction_h4():
    (z,) = ext_basis(RES_H4, 2)
    assert not restrict_to_line(z, (1,)).vanishes
    assert zero_locus(z) == []


def test_restriction_rescaling():
    for coords in itertools.product(range(5), repeat=3):
        z = cocycle_from_ext_coords(RES_S2, 2, coords)
        for lam in POINTS:
            base = restrict_to_line(z, lam).vanishes
            for a in range(1, 5):
                assert restrict_to_line(z, tuple(a * x % 5 for x in lam)).vanishes == base


def test_witness_class_separates_axes():
    i, j = POINTS.index((1, 0)), POINTS.index((0, 1))
    K = linalg.kernel_basis(F5, EV[i:i + 1])
    coords = next(K[:, t] for t in range(K.shape[1]) if F5.matmul(EV[j:j + 1], K[:, t:t + 1])[0, 0])
    z = cocycle_from_ext_coords(RES_S2, 2, coords)
    Z = zero_locus(z)
    assert (1, 0) in Z and (0, 1) not in Z


def test_line_kernels_separate_all_pairs():
    for i, j in itertools.permutations(range(len(POINTS)), 2):
        # some class vanishes at POINTS[i] and not at POINTS[j]
        assert linalg.rank(F5, EV[[i, j]]) == 2


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3), st.lists(st.integers(0, 4), min_size=3, max_size=3),
       st.integers(0, 5))
def test_restriction_is_linear(a, b, p):
    za, zb = cocycle_from_ext_coords(RES_S2, 2, a), cocycle_from_ext_coords(RES_S2, 2, b)
    lam = POINTS[p]
    lhs = restrict_to_line(za + zb, lam).value
    assert lhs == F5.add(restrict_to_line(za, lam).value, restrict_to_line(zb, lam).value)


def test_zero_class_locus_is_everything():
    z = cocycle_from_ext_coords(RES_S2, 2, [0, 0, 0])
    assert zero_locus(z) == POINTS


def test_lzeta_examples():
    (z,) = ext_basis(RES_H4, 2)
    assert lzeta(z).dim == 0
    for zs in ext_basis(RES_S2, 2):
        assert lzeta(zs).dim == RES_S2.omega(2).dim - 1
    with pytest.raises(ValueError):
        lzeta(cocycle_from_ext_coords(RES_S2, 2, [0, 0, 0]))


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3).filter(any))
def test_lzeta_variety_is_zero_locus(coords):
    z = cocycle_from_ext_coords(RES_S2, 2, coords)
    assert list(rank_variety(lzeta(z)).points) == zero_locus(z)


def test_aulambda_examples():
    M = aulambda(H4, (1,))
    assert M.dim == 2 and not M.rho("x1").any()
    assert aulambda(SIGN2, (1, 0)).dim == 4
    with pytest.raises(ValueError):
        aulambda(SIGN2, (0, 0))


def test_ext_from_aulambda_nonzero():
    k = trivial_module(SIGN2)
    for lam in POINTS:
        M = aulambda(SIGN2, lam)
        res = resolve(M, 5)
        assert all(ext_dim(M, k, n, res) > 0 for n in range(1, 5))


def test_cocycle_json_roundtrip():
    z = cocycle_from_ext_coords(RES_S2, 2, [1, 2, 3])
    back = cocycle_from_json(RES_S2, z.to_json())
    assert back.degree == 2 and np.array_equal(back.coeffs, z.coeffs)


def test_extension_field_locus_contains_prime_points():
    F25 = FieldSpec(5, 2)
    z = cocycle_from_ext_coords(RES_S2, 2, [1, 0, 1])
    small = set(zero_locus(z))
    big = set(zero_locus(z, F25))
    assert small <= big
