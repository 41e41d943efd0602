import json

import pytest

from verdier.cli import main
from verdier.config import SessionConfig


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_homsg_dual_numbers(capsys):
    code, out, _ = run(capsys, "homsg", "K", "K", "0")
    assert code == 0
    assert "dim 1, stabilized at n=2" in out


def test_homology_json(capsys):
    code, data = run_json(capsys, "homology", "P")
    assert code == 0 and data["status"] == "ok"


def test_classify_P_projectives(capsys):
    code, data = run_json(capsys, "classify", "P", "--ambient", "projectives")
    assert code == 0
    assert set(data["result"]["labels"]) >= {"K−b", "K−", "K∞b"}
    assert "Kb" not in data["result"]["labels"]


def test_truncate_and_cone(capsys):
    assert run(capsys, "truncate", "--intelligent", "--le", "0", "PI")[0] == 0
    assert run(capsys, "truncate", "--brutal", "--ge", "1", "PI")[0] == 0
    assert run(capsys, "cone", "P")[0] == 0


def test_contractible_and_nullhomotopy(capsys):
    code, data = run_json(capsys, "contractible", "P")
    assert code == 0 and data["result"]["contractible"] is False
    code, out, _ = run(capsys, "nullhomotopy", "P")
    assert code == 0 and out.startswith("no null-homotopy found")


def test_homk_certificate(capsys):
    code, data = run_json(capsys, "homk", "P", "P", "--certificate")
    assert code == 0
    assert data["result"]["dimension"] == 1
    assert len(data["result"]["basis"]) == 1


def test_witness_bounded_homology(capsys):
    code, out, _ = run(capsys, "witness", "thm2.1-3", "PI")
    assert code == 0 and "certificate ok" in out


def test_split_witness(capsys):
    code, data = run_json(capsys, "split-witness", "thm2.2-4", "PI")
    assert code == 0


def test_hominfty(capsys):
    code, data = run_json(capsys, "hominfty", "--minus", "P", "P")
    assert code == 0 and data["result"]["dimension"] == 0


def test_minimal(capsys):
    assert run(capsys, "minimal", "P")[0] == 0


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "injective-witness", "--cases", "3")
    assert code == 0 and out.startswith("PASS injective-witness: 3/3")


def test_verify_table5(capsys):
    code, out, _ = run(capsys, "verify", "table5")
    assert code == 0


def test_failing_suite_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "cone-truncation")
    assert code == 1 and out.startswith("FAIL")


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "homology", str(tmp_path / "missing.cplx"))[0] == 2
    bad = tmp_path / "bad.cplx"
    bad.write_text("not a document\n")
    assert run(capsys, "homology", str(bad))[0] == 2
    assert run(capsys, "homology", "P", "--p", "4")[0] == 2
    code, _, err = run(capsys, "witness", "thm2.1-3", "Z")
    assert code == 2 and "error" in err


def test_config_file_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    SessionConfig(output="json").save(cfg)
    code, out, _ = run(capsys, "homology", "P", "--config", str(cfg))
    assert code == 0 and json.loads(out)["status"] == "ok"
    monkeypatch.setenv("VERDIER_CONFIG", str(cfg))
    code, out, _ = run(capsys, "homology", "P")
    assert json.loads(out)["status"] == "ok"


def test_json_schema_stable(capsys):
    first = run_json(capsys, "verify", "oracle", "--cases", "5")[1]
    second = run_json(capsys, "verify", "oracle", "--cases", "5")[1]
    for d in (first, second):
        for s in d["result"]["suites"]:
            s.pop("seconds", None)
    assert first == second


def test_config_validation():
    with pytest.raises(ValueError):
        SessionConfig(s=0)
    with pytest.raises(ValueError):
        SessionConfig.from_dict({"p": 5, "colour": 1})
    c = SessionConfig().updated(p=7, seed=None)
    assert c.p == 7 and c.seed == 0
