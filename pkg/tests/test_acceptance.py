"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) for the summary lines only,
or through pytest, which prints the same lines and asserts on them.
"""

import sys

import pytest

from verdier.suites import run_suite

# criterion -> (suites, runtime budget in seconds or None)
CRITERIA = {
    1: (["intelligent-triangle"], 10.0),
    2: (["projective-witness"], None),
    3: (["module-witness"], None),
    4: (["dual-numbers"], None),
    5: (["semisimple"], None),
    6: (["gorenstein"], None),
    7: (["string"], None),
    8: (["dminus"], 30.0),
    9: (["cone-truncation"], None),
    10: (["oracle"], None),
}

TITLES = {
    1: "intelligent truncation triangles verify exactly",
    2: "brutal witnesses for the nine projective decompositions",
    3: "split witnesses (1)-(9) and auto-degree witnesses (a)-(e)",
    4: "dual numbers: Hom(K, K[k]) = 1 for |k| <= 6, scalar stable End",
    5: "K x K: singularity Homs vanish, bounded homology is bounded",
    6: "left bounded exact projective complexes are contractible",
    7: "string algebra: syzygies, right bounded contractibility, K+b = Kb",
    8: "right bounded quotient Homs stabilize, two schedules agree",
    9: "cone(sigma f) -> sigma cone(f) is a quasi-isomorphism",
    10: "homotopy_hom_dim agrees with the brute-force oracle",
}


def evaluate(k: int) -> tuple[bool, str]:
    names, budget = CRITERIA[k]
    results = [run_suite(n) for n in names]
    seconds = sum(r.seconds for r in results)
    ok = all(r.ok for r in results) and (budget is None or seconds < budget)
    counts = ", ".join(f"{r.name} {r.passed}/{r.total}" for r in results)
    limit = f", budget {budget:g} s" if budget else ""
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {TITLES[k]} [{counts}; {seconds:.1f} s{limit}]"
    details = [f"    {f}" for r in results for f in r.failures[:3]] + \
        [f"    note: {n}" for r in results for n in r.notes]
    return ok, "\n".join([line, *details])


def _report(capsys, k):
    ok, text = evaluate(k)
    with capsys.disabled():
        print("\n" + text)
    return ok, text


@pytest.mark.parametrize("k", [k for k in CRITERIA if k != 9])
def test_criterion(k, capsys):
    ok, text = _report(capsys, k)
    assert ok, text


@pytest.mark.xfail(strict=True, reason=(
    "the comparison map is only injective on H^n; its cokernel there is "
    "ker H^(n+1)(f), nonzero for some seeded maps (e.g. X = K in degree n+1, Y = 0)"))
def test_criterion_9_as_stated(capsys):
    ok, text = _report(capsys, 9)
    assert ok, text


def test_criterion_9_corrected(capsys):
    res = run_suite("cone-truncation-corrected")
    with capsys.disabled():
        print(f"\n{res.line()} (iso off degree n, H^n cokernel = ker H^(n+1)(f))")
    assert res.ok, res.failures[:5]


if __name__ == "__main__":
    outcomes = []
    for k in CRITERIA:
        ok, text = evaluate(k)
        print(text, flush=True)
        outcomes.append(ok)
    sys.exit(0 if all(outcomes) else 1)
