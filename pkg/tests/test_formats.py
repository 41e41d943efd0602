from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from verdier.algebra import AlgebraError, builtin, dual_numbers, string_algebra
from verdier.complexes import ComplexError, identity_map
from verdier.formats import (FormatError, algebra_from_spec, algebras_equal, complexes_equal,
                             emit_algebra_document, emit_complex, emit_map, module_from_spec,
                             parse_algebra, parse_complex, parse_document)
from verdier.generators import named_fixtures, random_complex

DATA = Path(__file__).resolve().parents[1] / "src" / "verdier" / "data"
HEADER = "verdier-format 1\n"
DUAL = """algebra dual_numbers
  p 101
  dim 2
  labels 1 x
  unit 1 0
  const 0 0 0 1
  const 0 1 1 1
  const 1 0 1 1
  radical 0 1
  idempotent 1 0
end
"""


def test_bundled_dual_numbers_file():
    A = parse_algebra(DATA / "dual_numbers.alg")
    assert A.dim == 2
    assert algebras_equal(A, dual_numbers())


def test_semisimple_builtin_line():
    A = parse_algebra(DATA / "semisimple1.alg")
    assert A.dim == 1 and A.radical.shape[0] == 0


@pytest.mark.parametrize("name", ["P", "I", "PI", "Z", "Zplus"])
def test_bundled_complexes_match_generators(name):
    X = parse_complex(DATA / f"{name}.cplx")
    assert complexes_equal(X, named_fixtures(dual_numbers())[name])


def test_string_resolution_file():
    X = parse_complex(DATA / "string_res.cplx")
    assert complexes_equal(X, named_fixtures(string_algebra())["res"])


def test_non_associative_rejected_with_triple():
    bad = DUAL.replace("const 1 0 1 1", "const 1 0 1 1\n  const 1 1 1 1")
    with pytest.raises((AlgebraError, FormatError), match=r"triple|radical"):
        parse_document(HEADER + bad)


def test_missing_header():
    with pytest.raises(FormatError, match="line 1"):
        parse_document(DUAL)


def test_empty_complex_is_zero():
    doc = parse_document(HEADER + DUAL + "complex E\nend\n")
    assert doc.complexes["E"].is_zero()


def test_nonzero_square_rejected():
    text = HEADER + DUAL + """module R regular
complex X
  term 0 R
  term 1 R
  term 2 R
  diff 0
    1 0
    0 1
  diff 1
    1 0
    0 1
end
"""
    with pytest.raises(ComplexError, match="d"):
        parse_document(text)


def test_bad_row_reports_line():
    text = HEADER + DUAL + """module R regular
complex X
  term 0 R
  term 1 R
  diff 0
    0 0 1
    1 0
end
"""
    with pytest.raises(FormatError, match=r"line \d+: diff 0, row 0"):
        parse_document(text)


def test_unknown_module_reference():
    with pytest.raises(FormatError):
        parse_document(HEADER + DUAL + "complex X\n  term 0 Q\nend\n")


def test_spec_strings():
    A = algebra_from_spec("semisimple:n=2,p=5")
    assert A.dim == 2 and A.p == 5
    D = algebra_from_spec("dual_numbers")
    assert module_from_spec("K", D).dim == 1
    assert module_from_spec("free:3", D).dim == 6
    assert module_from_spec("zero", D).dim == 0
    with pytest.raises((FormatError, KeyError, ValueError)):
        module_from_spec("banana", D)


@pytest.mark.parametrize("name", ["dual_numbers", "string_algebra", "a2_path", "semisimple"])
def test_algebra_round_trip(name):
    A = builtin(name)
    B = parse_document(emit_algebra_document(A)).algebra
    assert algebras_equal(A, B)


def test_map_round_trip(fx):
    X = fx["PI"]
    text = emit_complex(X, "X") + emit_map(identity_map(X), "f", "X", "X")
    doc = parse_document(text)
    f = doc.maps["f"]
    for n in range(-4, 5):
        assert np.array_equal(f.component(n), np.eye(2, dtype=np.int64))


ALGS = {"dual": dual_numbers, "string": string_algebra}


@given(st.sampled_from(sorted(ALGS)), st.integers(0, 2**32 - 1))
def test_complex_round_trip(name, seed):
    A = ALGS[name]()
    rng = np.random.default_rng(seed)
    kinds = [None, "free", "split"] + (["exact"] if name == "dual" else [])
    X = random_complex(A, rng, int(rng.integers(1, 5)), int(rng.integers(-3, 3)),
                       left=kinds[int(rng.integers(0, len(kinds)))],
                       right=kinds[int(rng.integers(0, len(kinds)))], terms="modules")
    text = emit_complex(X)
    Y = parse_complex("<memory>", text=text)
    assert complexes_equal(X, Y)
    assert emit_complex(Y) == text
