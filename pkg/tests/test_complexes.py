import numpy as np
import pytest
from hypothesis import given, strategies as st

from verdier import linalg as la
from verdier.algebra import dual_numbers, regular_module, simple_module, string_algebra
from verdier.complexes import (Complex, ComplexError, Tail, brutal_ge, brutal_le, cone,
                               direct_sum, homology_dim, identity_map, intelligent_le,
                               intelligent_ge, is_quasi_isomorphism, shift, stalk, zero_map,
                               zero_complex)
from verdier.generators import random_complex, random_exact, random_quasi_isomorphism
from verdier.homotopy import is_contractible
from verdier.minimal import is_minimal, minimal_model
from verdier.triangles import intelligent_triangle, stupid_triangle


def degrees(X, pad=3):
    P = X.left.period if X.left else 0
    Q = X.right.period if X.right else 0
    return range(X.lo - P - pad, X.hi + Q + pad + 1)


def test_validation_rejects_nonzero_square(D):
    R = regular_module(D)
    with pytest.raises(ComplexError):
        Complex(D, 0, [R, R, R], [la.identity(2), la.identity(2)])


def test_seam_checked(D):
    R = regular_module(D)
    x = D.left_mult[1]
    with pytest.raises(ComplexError):
        Complex(D, 0, [R, R], [la.identity(2)], right=Tail(1))
    Complex(D, 0, [R, R], [x], right=Tail(1))


def test_shift_reindexes(fx):
    P = fx["P"]
    assert homology_dim(P, 0) == 1
    P1 = shift(P, 1)
    assert homology_dim(P1, -1) == 1 and homology_dim(P1, 0) == 0
    back = shift(P1, -1)
    for n in degrees(P):
        assert np.array_equal(back.diff(n), P.diff(n))


def test_homology_of_fixtures(fx, D):
    assert [homology_dim(fx["P"], n) for n in range(-4, 3)] == [0, 0, 0, 0, 1, 0, 0]
    assert all(homology_dim(fx["PI"], n) == 0 for n in range(-5, 6))
    assert all(homology_dim(fx["Z"], n) == 2 for n in range(-6, 1))


def test_brutal_truncations(fx, D):
    P, I = fx["P"], fx["I"]
    U = brutal_ge(P, 1)
    assert all(U.dim(n) == 0 for n in degrees(P))
    X = random_complex(D, np.random.default_rng(1), 3)
    V = brutal_le(X, X.hi + 2)
    assert all(V.dim(n) == X.dim(n) for n in degrees(X))
    T = brutal_le(I, 2)
    assert [T.dim(n) for n in range(-1, 5)] == [0, 2, 2, 2, 0, 0]
    assert [homology_dim(T, n) for n in range(0, 3)] == [1, 0, 1]


def test_intelligent_le_of_PI_is_P_shaped(fx):
    T = intelligent_le(fx["PI"], 0)
    assert [T.dim(n) for n in range(-3, 3)] == [2, 2, 2, 2, 1, 0]
    assert all(homology_dim(T, n) == 0 for n in range(-5, 3))


def test_intelligent_ge_of_PI(fx):
    T = intelligent_ge(fx["PI"], 1)
    assert [T.dim(n) for n in range(-1, 4)] == [0, 1, 2, 2, 2]


def test_intelligent_le_of_exact_is_exact(D):
    X = random_exact(D, np.random.default_rng(3), "both")
    T = intelligent_le(X, 1)
    assert all(homology_dim(T, n) == 0 for n in degrees(T))


def test_stupid_triangle_degenerate(D):
    X = random_complex(D, np.random.default_rng(7), 3)
    T = stupid_triangle(X, X.lo - 1)
    assert T.verify()
    assert all(T.V.dim(n) == 0 for n in degrees(X))


def test_stupid_triangle_on_PI(fx):
    T = stupid_triangle(fx["PI"], 1)
    assert T.verify()
    assert T.U.left is None and T.U.right is not None
    assert T.V.right is None and T.V.left is not None


def test_intelligent_triangle_on_PI(fx):
    T = intelligent_triangle(fx["PI"], 0)
    assert T.verify()
    assert [T.V.dim(n) for n in range(-1, 3)] == [0, 1, 2, 2]


def test_cone_of_identity_contractible(D):
    X = random_complex(D, np.random.default_rng(5), 4, left="free")
    assert is_contractible(cone(identity_map(X))).contractible


def test_cone_of_zero_map_is_sum(D):
    rng = np.random.default_rng(9)
    X, Y = random_complex(D, rng, 3), random_complex(D, rng, 3, lo=1)
    C = cone(zero_map(X, Y))
    for n in range(-2, 6):
        assert C.dim(n) == X.dim(n + 1) + Y.dim(n)
        assert homology_dim(C, n) == homology_dim(X, n + 1) + homology_dim(Y, n)


def test_minimal_model_of_contractible_is_zero(D):
    A = stalk(regular_module(D))
    mm = minimal_model(cone(identity_map(A)))
    assert mm.complex.compact().total_dim() == 0


def test_minimal_model_strips_contractible_summand(fx, D):
    extra = cone(identity_map(stalk(regular_module(D), -1)))
    mm = minimal_model(direct_sum(fx["P"], extra))
    C = mm.complex
    assert is_minimal(C)
    assert all(C.dim(n) == fx["P"].dim(n) for n in range(-5, 3))


def test_minimal_model_of_left_bounded_exact_is_zero(fx):
    rng = np.random.default_rng(11)
    X = cone(random_quasi_isomorphism(fx["I"], rng, terms="projective"))
    assert X.left is None and all(homology_dim(X, n) == 0 for n in degrees(X))
    C = minimal_model(X).complex
    assert all(C.dim(n) == 0 for n in degrees(X))


def test_zero_complex_and_stalk(D):
    Z = zero_complex(D)
    assert Z.total_dim() == 0
    K = stalk(simple_module(D, 0), 2)
    assert homology_dim(K, 2) == 1


def test_quasi_isomorphism_truncates(D):
    rng = np.random.default_rng(13)
    X = random_complex(D, rng, 4)
    f = random_quasi_isomorphism(X, rng)
    assert is_quasi_isomorphism(f)
    from verdier.complexes import truncate_map_le
    assert is_quasi_isomorphism(truncate_map_le(f, X.lo + 1))


ALGS = {"dual": dual_numbers, "string": string_algebra}
seeds = st.integers(0, 2**32 - 1)


@given(st.sampled_from(sorted(ALGS)), seeds, st.integers(-3, 3))
def test_homology_under_shift(name, seed, k):
    A = ALGS[name]()
    X = random_complex(A, np.random.default_rng(seed), 4, terms="modules")
    Y = shift(X, k)
    for n in degrees(X):
        assert homology_dim(Y, n - k) == homology_dim(X, n)


@given(st.sampled_from(sorted(ALGS)), seeds, st.integers(0, 5))
def test_intelligent_le_homology(name, seed, n):
    A = ALGS[name]()
    X = random_complex(A, np.random.default_rng(seed), 4, terms="modules")
    T = intelligent_le(X, n)
    for i in degrees(X):
        want = homology_dim(X, i) if i <= n else 0
        assert homology_dim(T, i) == want


@given(st.sampled_from(sorted(ALGS)), seeds)
def test_squares_vanish_past_seams(name, seed):
    A = ALGS[name]()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 3, left="free" if A.name.startswith("dual") else None,
                       right="exact" if A.name.startswith("dual") else None)
    for n in degrees(X):
        assert not la.mul(X.diff(n + 1), X.diff(n), A.p).any()


@given(st.sampled_from(sorted(ALGS)), seeds, st.integers(0, 4))
def test_stupid_triangle_verifies(name, seed, n):
    A = ALGS[name]()
    X = random_complex(A, np.random.default_rng(seed), 4)
    assert stupid_triangle(X, n).verify()


@given(st.sampled_from(sorted(ALGS)), seeds, st.integers(-1, 4))
def test_intelligent_triangle_verifies(name, seed, n):
    A = ALGS[name]()
    X = random_complex(A, np.random.default_rng(seed), 4, terms="modules")
    T = intelligent_triangle(X, n)
    assert T.verify(), T.failures


@given(seeds)
def test_quasi_isomorphisms_survive_truncation(seed):
    from verdier.complexes import truncate_map_le
    A = dual_numbers()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 4, terms="modules")
    f = random_quasi_isomorphism(X, rng)
    for n in range(X.lo - 1, X.hi + 2):
        assert is_quasi_isomorphism(truncate_map_le(f, n))
