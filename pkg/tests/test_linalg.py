import numpy as np
import pytest
from hypothesis import given, strategies as st

from verdier import linalg as la

PRIMES = [2, 3, 5, 7, 101]


@st.composite
def matrices(draw, max_side=6):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def test_rref_of_zero_has_no_pivots():
    R, piv = la.rref(la.zeros(3, 4), 7)
    assert piv == []
    assert not R.any()


def test_rref_identity():
    R, piv = la.rref(la.identity(3), 7)
    assert piv == [0, 1, 2]
    assert np.array_equal(R, la.identity(3))


def test_rank_deficient_over_f5():
    m = la.mat([[1, 2], [2, 4]], 5)
    assert la.rank(m, 5) == 1
    assert la.rref(m, 5)[1] == [0]


def test_kernel_over_f3():
    K = la.kernel_basis(la.mat([[1, 1]], 3), 3)
    assert K.shape == (2, 1)
    assert tuple(K[:, 0] * la.inv_scalar(int(K[0, 0]), 3) % 3) == (1, 2)


def test_solve_consistent_and_inconsistent():
    a = la.mat([[1, 1], [0, 1]], 7)
    x = la.solve(a, la.mat([[3], [1]], 7), 7)
    assert np.array_equal(la.mul(a, x, 7), la.mat([[3], [1]], 7))
    singular = la.mat([[1, 1], [1, 1]], 7)
    assert la.solve(singular, la.mat([[1], [2]], 7), 7) is None


def test_inverse_and_scalar_inverse():
    a = la.mat([[2, 1], [1, 1]], 5)
    assert np.array_equal(la.mul(a, la.inverse(a, 5), 5), la.identity(2))
    assert la.inv_scalar(3, 7) * 3 % 7 == 1
    with pytest.raises(ZeroDivisionError):
        la.inv_scalar(0, 7)


def test_non_prime_rejected():
    assert not la.is_prime(4)
    with pytest.raises(ValueError):
        la.set_prime(4)


def test_complement_spans_everything():
    sub = la.mat([[1], [1], [0]], 5)
    C = la.complement_basis(sub, 3, 5)
    assert la.rank(np.hstack([sub, C]), 5) == 3


@given(matrices())
def test_rank_plus_nullity(mp):
    m, p = mp
    assert la.rank(m, p) + la.kernel_basis(m, p).shape[1] == m.shape[1]


@given(matrices())
def test_kernel_vectors_are_killed(mp):
    m, p = mp
    K = la.kernel_basis(m, p)
    assert not la.mul(m, K, p).any()


@given(matrices())
def test_rref_idempotent(mp):
    m, p = mp
    R, piv = la.rref(m, p)
    R2, piv2 = la.rref(R, p)
    assert piv == piv2
    assert np.array_equal(R, R2)


@given(matrices(), st.data())
def test_solve_finds_solutions_of_reachable_targets(mp, data):
    m, p = mp
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1],
                                    max_size=m.shape[1])), dtype=np.int64).reshape(-1, 1)
    b = la.mul(m, x, p)
    y = la.solve(m, b, p)
    assert y is not None
    assert np.array_equal(la.mul(m, y, p), b)
