import numpy as np
import pytest
from hypothesis import given, strategies as st

from verdier.algebra import (dual_numbers, regular_module, simple_module,
                             string_algebra)
from verdier.complexes import (cone, homology_dim, identity_map, intelligent_le, stalk,
                               truncate_map_le, zero_complex)
from verdier.generators import (random_chain_map, random_complex, random_exact,
                                random_quasi_isomorphism, seeded)
from verdier.homotopy import is_contractible
from verdier.quotients import (DECOMPOSITIONS, SPLIT_IDS, HasseLabel as L, WitnessError,
                               classify, compose_tstructures, cone_comparison_report,
                               hom_dminus_infty, hom_dplus_infty, hom_sg, is_upward_closed,
                               split_witness, star_witness, supersets)
from verdier.suites import sample_with_label

seeds = st.integers(0, 2**32 - 1)


def test_label_parsing_and_order():
    assert L.parse("K-b") is L.MINUS_B
    assert L.parse("Kinf0") is L.INF_EXACT
    assert supersets(L.B_EXACT) == frozenset(L)
    assert supersets(L.K) == {L.K}
    with pytest.raises(ValueError):
        L.parse("K++")


def test_classify_P(fx):
    c = classify(fx["P"], "projectives")
    assert c.labels == supersets(L.MINUS_B)


def test_classify_PI(fx):
    c = classify(fx["PI"], "projectives")
    assert c.labels == supersets(L.INF_EXACT)


def test_classify_I_in_injectives(fx):
    assert classify(fx["I"], "injectives").labels == supersets(L.PLUS_B)


def test_bounded_exact_projective_complex_has_every_label(D):
    X = cone(identity_map(random_complex(D, np.random.default_rng(0), 3)))
    assert classify(X, "projectives").labels == frozenset(L)
    assert is_contractible(X).contractible


def test_classify_rejects_unknown_ambient(fx):
    with pytest.raises(ValueError):
        classify(fx["P"], "sheaves")


def test_projective_witness_on_bounded_homology(D):
    X = sample_with_label(D, L.INF_B, "projectives", seeded(5, 0))
    w = star_witness(X, "thm2.1-3")
    assert w.verified, w.failures
    assert L.PLUS_B in w.labels[0] and L.MINUS_B in w.labels[1]


def test_exact_complex_splits_at_zero(fx):
    w = star_witness(fx["PI"], "thm2.2-a")
    assert w.n == 0 and w.verified
    assert L.MINUS_EXACT in w.labels[0] and L.PLUS_EXACT in w.labels[1]


def test_degenerate_witness(D):
    X = random_complex(D, seeded(5, 1), 3)
    w = star_witness(X, "thm2.1-9", n=X.lo - 1)
    assert w.verified
    assert all(w.V.dim(k) == 0 for k in range(X.lo - 6, X.hi + 6))


def test_witness_errors(fx):
    with pytest.raises(WitnessError, match="unknown decomposition"):
        star_witness(fx["P"], "thm9.9-1")
    with pytest.raises(WitnessError):
        star_witness(fx["Z"], "thm2.1-3")     # homology unbounded below
    with pytest.raises(WitnessError):
        split_witness(fx["PI"], "thm2.2-a")


def test_auto_degree_needs_bounded_homology(fx, D):
    Z = fx["Z"]
    with pytest.raises(WitnessError):
        star_witness(Z, "thm2.2-b")


def test_split_witness_PI(fx):
    intel, brutal = split_witness(fx["PI"], "thm2.2-4")
    assert intel.verified and brutal.verified
    assert L.PLUS in brutal.labels[0] and L.MINUS in brutal.labels[1]
    assert L.MINUS_EXACT in intel.labels[0]


def test_split_witness_bounded(D):
    X = random_complex(D, np.random.default_rng(3), 3)
    for w in split_witness(X, "thm2.2-9"):
        assert w.verified


def test_composition_matches_direct_witness(D):
    X = sample_with_label(D, L.INF_PLUS, "projectives", seeded(7, 0))
    outer = star_witness(X, "thm2.1-1")
    inner = star_witness(outer.V, "thm2.1-3", check=False)
    comp = compose_tstructures(outer, inner)
    direct = star_witness(X, "thm2.1-5")
    assert comp.verified, comp.failures
    assert comp.claims == direct.claims
    for k in range(X.lo - 4, X.hi + 4):
        assert homology_dim(comp.V, k) == homology_dim(direct.V, k)


def test_composition_rejects_unrelated(D, fx):
    a = star_witness(fx["P"], "thm2.1-9")
    b = star_witness(fx["PI"], "thm2.1-4")
    with pytest.raises(WitnessError):
        compose_tstructures(a, b)


def test_hom_sg_dual_numbers(D):
    K, R = simple_module(D, 0), regular_module(D)
    r = hom_sg(K, K, 0)
    assert (r.dimension, r.stabilized_at) == (1, 2)
    assert hom_sg(R, K, 0).dimension == 0


def test_hom_sg_semisimple(E2):
    for t in range(2):
        assert hom_sg(simple_module(E2, t), simple_module(E2, 1 - t), 1).dimension == 0


def test_hom_sg_reports_non_stabilization(D):
    K = simple_module(D, 0)
    r = hom_sg(K, K, 0, s=3, cap=3)
    assert r.stabilized and r.dimension == 1
    r = hom_sg(K, K, 0, s=2, cap=2)
    assert len(r.schedule) == 2


def test_hom_dminus_examples(fx, D):
    assert hom_dminus_infty(fx["P"], fx["P"]).dimension == 0
    assert hom_dminus_infty(zero_complex(D), fx["P"]).dimension == 0
    one = hom_dminus_infty(fx["Z"], fx["Z"], step=1)
    two = hom_dminus_infty(fx["Z"], fx["Z"], step=2)
    assert one.stabilized and two.stabilized and one.dimension == two.dimension


def test_hom_dplus_examples(fx, D):
    assert hom_dplus_infty(fx["I"], fx["I"]).dimension == 0
    assert hom_dplus_infty(fx["I"], zero_complex(D)).dimension == 0
    plus = hom_dplus_infty(fx["Zplus"], fx["Zplus"])
    minus = hom_dminus_infty(fx["Z"], fx["Z"])
    assert plus.dimension == minus.dimension


def test_cone_comparison_counterexample(D):
    # X = K in degree 1, Y = 0, n = 0: H^0 of the target is K, of the source 0
    from verdier.complexes import zero_map
    X = stalk(simple_module(D, 0), 1)
    f = zero_map(X, zero_complex(D))
    rep = cone_comparison_report(f, 0)
    assert rep.chain_map and not rep.quasi_isomorphism
    assert rep.degree_n_cokernel == rep.kernel_above == 1
    assert rep.defect_explained


ALGS = {"dual": dual_numbers, "string": string_algebra}


@given(st.sampled_from(sorted(ALGS)), seeds, st.sampled_from(["modules", "projectives"]))
def test_labels_upward_closed(name, seed, ambient):
    A = ALGS[name]()
    rng = np.random.default_rng(seed)
    terms = "modules" if ambient == "modules" else "projective"
    kinds = [None, "free", "split"] + (["exact"] if name == "dual" else [])
    left = kinds[int(rng.integers(0, len(kinds)))]
    right = kinds[int(rng.integers(0, len(kinds)))]
    X = random_complex(A, rng, 3, left=left, right=right, terms=terms)
    assert is_upward_closed(classify(X, ambient).labels)


@given(seeds, st.integers(-2, 3))
def test_cone_comparison_corrected(seed, n):
    A = dual_numbers()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 4, terms="modules")
    Y = random_complex(A, rng, 4, terms="modules")
    rep = cone_comparison_report(random_chain_map(X, Y, rng), n)
    assert rep.defect_explained


@given(seeds)
def test_hom_dminus_invariant_under_truncation(seed):
    A = dual_numbers()
    rng = np.random.default_rng(seed)
    left = [None, "free", "split", "exact"][int(rng.integers(0, 4))]
    X = random_complex(A, rng, 3, left=left, terms="modules")
    m = X.lo + int(rng.integers(0, 3))
    a = hom_dminus_infty(X, X)
    b = hom_dminus_infty(intelligent_le(X, m), X)
    assert a.stabilized and b.stabilized and a.dimension == b.dimension


@given(seeds)
def test_quasi_isomorphism_truncations_have_exact_cones(seed):
    A = string_algebra()
    rng = np.random.default_rng(seed)
    X = random_complex(A, rng, 4, terms="modules")
    f = random_quasi_isomorphism(X, rng)
    C = cone(truncate_map_le(f, X.lo + int(rng.integers(0, 4))))
    assert all(homology_dim(C, k) == 0 for k in range(C.lo - 2, C.hi + 3))


def test_table_covers_every_id():
    assert len([k for k in DECOMPOSITIONS if k.startswith("thm2.1-")]) == 9
    assert len(SPLIT_IDS) == 9
    assert "lemma3.1" in DECOMPOSITIONS


def test_random_exact_both_is_infinite_exact(D):
    X = random_exact(D, np.random.default_rng(1), "both")
    assert L.INF_EXACT in classify(X).labels
