import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from suppvar import linalg
from suppvar.linalg import FieldSpec, NoSolution

import oracle

F5 = FieldSpec(5)


def matrices(p=5, max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    ).map(lambda rows: np.array(rows, dtype=np.int64))


def test_rank_examples():
    assert linalg.rank(F5, np.eye(2, dtype=np.int64)) == 2
    assert linalg.rank(F5, np.zeros((3, 4), dtype=np.int64)) == 0
    assert linalg.rank(F5, np.array([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert linalg.kernel_basis(F5, np.eye(3, dtype=np.int64)).shape[1] == 0
    assert linalg.kernel_basis(F5, np.zeros((2, 2), dtype=np.int64)).shape[1] == 2
    K = linalg.kernel_basis(F5, np.array([[1, 1]]))
    assert K.shape == (2, 1)
    v = K[:, 0]
    # proportional to (1, 4)
    assert (v[0] * 4 - v[1]) % 5 == 0 and v.any()


def test_solve_examples():
    b = np.array([[3], [1]])
    assert np.array_equal(linalg.solve(F5, np.eye(2, dtype=np.int64), b), b)
    with pytest.raises(NoSolution):
        linalg.solve(F5, np.zeros((2, 2), dtype=np.int64), np.array([[1], [0]]))
    m = np.array([[1, 2]])
    x = linalg.solve(F5, m, np.array([[0]]))
    assert np.array_equal(F5.matmul(m, x) % 5, np.array([[0]]))


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        linalg.solve(F5, np.eye(2, dtype=np.int64), np.zeros((3, 1), dtype=np.int64))


def test_even_characteristic_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2)


def test_extension_field_basics():
    F = FieldSpec(5, 2)
    assert F.q == 25
    nz = range(1, 25)
    assert all(F.mul(a, F.inv(a)) == 1 for a in nz)
    w = F.primitive_element
    assert len({F.pow(w, k) for k in range(24)}) == 24


@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24), st.sampled_from([(5, 1), (5, 2), (3, 3)]))
def test_field_axioms(a, b, c, pe):
    F = FieldSpec(*pe)
    a, b, c = a % F.q, b % F.q, c % F.q
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(matrices())
def test_rank_plus_nullity(m):
    r = linalg.rank(F5, m)
    K = linalg.kernel_basis(F5, m)
    assert r + K.shape[1] == m.shape[1]
    assert not F5.matmul(m, K).any()


@given(matrices())
def test_rank_matches_oracle(m):
    assert linalg.rank(F5, m) == oracle.rank_mod_p(m.tolist(), 5)


@given(matrices(), st.lists(st.integers(0, 4), min_size=6, max_size=6))
def test_solve_is_verified(m, xs):
    x = np.array(xs[: m.shape[1]], dtype=np.int64)[:, None]
    b = F5.matmul(m, x)
    y = linalg.solve(F5, m, b)
    assert np.array_equal(F5.matmul(m, y), b)


@given(matrices(p=7), matrices(p=7))
def test_degree_one_extension_matches_prime_field(a, b):
    P, E = FieldSpec(7), FieldSpec(7, 1)
    assert np.array_equal(P.add(a, a), E.add(a, a))
    if a.shape[1] == b.shape[0]:
        assert np.array_equal(P.matmul(a, b), E.matmul(a, b))
    assert linalg.rank(P, a) == linalg.rank(E, a)


@given(st.lists(matrices(max_rows=4, max_cols=4), min_size=1, max_size=5))
def test_batched_rank(ms):
    shape = ms[0].shape
    ms = [m for m in ms if m.shape == shape]
    got = linalg.batched_rank(F5, np.stack(ms))
    assert list(got) == [linalg.rank(F5, m) for m in ms]


def test_extension_rank_via_blowup():
    F = FieldSpec(5, 2)
    w = F.primitive_element
    # rows (1, w) and (w, w^2) are proportional over F_25
    m = np.array([[1, w], [w, F.mul(w, w)]], dtype=np.int64)
    assert linalg.rank(F, m) == 1


def test_scalar_serialization_roundtrip():
    F = FieldSpec(5, 2)
    for a in range(25):
        assert F.scalar_from_json(F.scalar_to_json(a)) == a
    assert isinstance(F5.scalar_to_json(3), int)


def test_size_guard(monkeypatch):
    monkeypatch.setenv("SUPPVAR_MAX_DIM", "10")
    with pytest.raises(linalg.SizeLimitExceeded):
        linalg.check_size(11)
    linalg.check_size(10)
