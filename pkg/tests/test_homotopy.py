import numpy as np
from hypothesis import given, strategies as st

from verdier import linalg as la
from verdier.algebra import dual_numbers, hom_space, regular_module, simple_module, string_algebra
from verdier.complexes import (cone, direct_sum, graded_map, identity_map, is_chain_map,
                               is_homotopy, stalk, zero_map)
from verdier.generators import random_chain_map, random_complex, random_contractible
from verdier.homotopy import (homotopy_equivalent, homotopy_hom, homotopy_hom_dim,
                              is_contractible, null_homotopy)
from verdier.minimal import minimal_model
from verdier.oracle import hom_k_dim_bruteforce
from verdier.triangles import intelligent_triangle

ALGS = {"dual": dual_numbers, "string": string_algebra}
seeds = st.integers(0, 2**32 - 1)


def test_identity_is_chain_map(fx):
    assert is_chain_map(identity_map(fx["PI"])) == (True, None)


def test_random_components_fail_with_degree(fx):
    P = fx["P"]
    rng = np.random.default_rng(2)
    f = graded_map(P, P, lambda n: la.random_matrix(rng, 2, 2, P.p) if n == 0 else None)
    ok, deg = is_chain_map(f)
    assert not ok and deg is not None


def test_null_homotopy_of_zero_is_zero(D):
    X = random_complex(D, np.random.default_rng(4), 3)
    h = null_homotopy(zero_map(X, X))
    assert h is not None
    assert is_homotopy(zero_map(X, X), zero_map(X, X), h)


def test_contractible_cone_has_null_homotopic_identity(D):
    C = cone(identity_map(stalk(regular_module(D))))
    h = null_homotopy(identity_map(C))
    assert h is not None and is_homotopy(identity_map(C), zero_map(C, C), h)


def test_left_bounded_exact_projective_identity_is_null_homotopic(fx):
    from verdier.generators import random_quasi_isomorphism
    X = cone(random_quasi_isomorphism(fx["I"], np.random.default_rng(6), terms="projective"))
    h = null_homotopy(identity_map(X))
    assert h is not None and is_homotopy(identity_map(X), zero_map(X, X), h)


def test_P_is_not_contractible(fx):
    res = is_contractible(fx["P"])
    assert not res.contractible


def test_PI_is_not_contractible(fx):
    # exact, but not split: no periodic contraction exists
    assert not is_contractible(fx["PI"]).contractible


def test_right_bounded_exact_string_complex_is_contractible(S):
    from verdier.generators import random_quasi_isomorphism
    rng = np.random.default_rng(8)
    X = random_complex(S, rng, 3, left="split", max_mult=1)
    C = cone(random_quasi_isomorphism(X, rng, terms="projective"))
    assert C.right is None
    assert is_contractible(C).contractible


def test_hom_of_stalks_is_module_hom(D):
    K, R = simple_module(D, 0), regular_module(D)
    assert homotopy_hom_dim(stalk(R), stalk(R)) == len(hom_space(R, R))
    assert homotopy_hom_dim(stalk(K), stalk(K)) == 1


def test_hom_P_P(fx):
    res = homotopy_hom(fx["P"], fx["P"])
    assert res.dim == 1


def test_hom_from_contractible_vanishes(D, fx):
    C = random_contractible(D, np.random.default_rng(10), 2)
    assert homotopy_hom_dim(C, fx["P"]) == 0
    assert homotopy_hom_dim(C, stalk(regular_module(D))) == 0


def test_basis_elements_are_chain_maps(fx):
    res = homotopy_hom(fx["I"], fx["I"], want_basis=True)
    assert len(res.basis) == res.dim
    for f in res.basis:
        assert is_chain_map(f)[0]


def test_equivalence_found_with_contractible_summand(D):
    X = random_complex(D, np.random.default_rng(12), 3)
    Y = direct_sum(X, cone(identity_map(random_complex(D, np.random.default_rng(13), 2))))
    res = homotopy_equivalent(X, Y)
    assert res.found and res.equivalence.verify()


def test_truncation_cone_equivalence_found(D):
    X = random_complex(D, np.random.default_rng(14), 4, terms="modules")
    T = intelligent_triangle(X, X.lo + 1)
    res = homotopy_equivalent(T.C, T.V, candidates=[T.F])
    assert res.found


def test_P_and_I_not_equivalent(fx):
    res = homotopy_equivalent(fx["P"], fx["I"])
    assert res.status == "not-equivalent"
    assert res.reason == "class labels differ"


@given(st.sampled_from(sorted(ALGS)), seeds)
def test_null_homotopy_certificates(name, seed):
    A = ALGS[name]()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 3)
    C = random_contractible(A, rng, 2)
    f = random_chain_map(X, C, rng)
    h = null_homotopy(f)
    assert h is not None
    assert is_homotopy(f, zero_map(X, C), h)


@given(st.sampled_from(sorted(ALGS)), seeds)
def test_hom_invariant_under_contractible_summand(name, seed):
    A = ALGS[name]()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 3, terms="modules")
    Y = random_complex(A, rng, 3, terms="modules")
    Z = direct_sum(X, cone(identity_map(random_complex(A, rng, 2))))
    base = homotopy_hom_dim(X, Y)
    assert homotopy_hom_dim(Z, Y) == base
    assert homotopy_hom_dim(Y, Z) == homotopy_hom_dim(Y, X)


@given(st.sampled_from(sorted(ALGS)), seeds)
def test_hom_matches_minimal_models(name, seed):
    A = ALGS[name]()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 4)
    Y = random_complex(A, rng, 3)
    mx, my = minimal_model(X).complex, minimal_model(Y).complex
    assert homotopy_hom_dim(X, Y) == homotopy_hom_dim(mx, my)


@given(seeds)
def test_hom_matches_bruteforce_oracle(seed):
    A = dual_numbers(5)
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 2, terms="modules", max_mult=1)
    Y = random_complex(A, rng, 2, lo=int(rng.integers(-1, 2)), terms="modules", max_mult=1)
    assert homotopy_hom_dim(X, Y) == hom_k_dim_bruteforce(X, Y)
