import csv
import io
import json

import pytest

from betapoly.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def _body(text):
    doc = json.loads(text)
    doc["manifest"].pop("timestamp")
    return doc


def test_fvector_cone():
    code, out = run(["fvector", "cone", "--n", "4", "--d", "2", "--k", "1", "--form", "a", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(3.5682915925838, abs=1e-8)
    assert doc["manifest"]["command"] == "fvector" and doc["manifest"]["tool_version"]


def test_fvector_beta_simplex():
    code, out = run(["fvector", "beta", "--n", "4", "--d", "3", "--beta", "0", "--k", "2", "--json"])
    assert code == 0 and json.loads(out)["value"] == pytest.approx(6.0, abs=1e-9)


def test_fvector_domain_exit(capsys):
    code, _ = run(["fvector", "betaprime", "--n", "5", "--d", "2", "--beta", "1.1", "--k", "1"])
    assert code == 2
    assert "not representable" in capsys.readouterr().err


def test_usage_errors_exit_64(capsys):
    assert run(["fvector", "cone", "--n", "4"])[0] == 64
    assert run(["frobnicate"])[0] == 64
    assert run(["fvector", "cone", "--n", "2", "--d", "2"])[0] == 64
    assert run(["fvector", "beta", "--n", "5", "--d", "2"])[0] == 64


def test_nonconvergence_exit(monkeypatch):
    from betapoly import cli
    from betapoly.errors import NonConvergence

    def boom(*a, **k):
        raise NonConvergence("forced")

    monkeypatch.setattr(cli, "_face_number", boom)
    assert run(["fvector", "cone", "--n", "4", "--d", "2"])[0] == 3


def test_csv_and_json_agree():
    args = ["fvector", "cone", "--n", "7", "--d", "3", "--k", "2"]
    _, js = run(args + ["--json"])
    _, cs = run(args + ["--csv"])
    lines = [l for l in cs.splitlines() if not l.startswith("#")]
    rows = list(csv.DictReader(lines))
    assert float(rows[0]["value"]) == json.loads(js)["value"]
    assert cs.startswith("# manifest: ")


def test_angle():
    code, out = run(["angle", "--n", "3", "--d", "1", "--json"])
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.25, rel=1e-12)


def test_verify_stirling_and_cones():
    code, out = run(["verify", "--suite", "stirling"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    checks = doc["suites"]["stirling"]["checks"]
    assert any(c["checked"] == 23425 for c in checks)
    code, out = run(["verify", "--suite", "cones"])
    assert code == 0
    cones = json.loads(out)["suites"]["cones"]["checks"]
    assert max(c["worst"] for c in cones) <= 1e-8


def test_verify_failure_exit():
    code, out = run(["verify", "--suite", "cones", "--tol", "1e-18"])
    assert code == 1 and not json.loads(out)["passed"]


def test_stirling_triple():
    code, out = run(["stirling", "--triple", "3", "2", "2"])
    t = json.loads(out)["triple"]
    assert code == 0 and (t["L"], t["M"], t["R"]) == ("7", "7", "7")


def test_simulate_zero_variance_and_determinism():
    args = ["simulate", "--model", "cone", "--d", "1", "--n", "5", "--reps", "1000"]
    code, out = run(args)
    doc = json.loads(out)
    assert code == 0 and doc["rows"][0]["empirical"] == 2.0 and doc["passed"]
    assert _body(run(args)[1]) == _body(out)


def test_simulate_not_representable_exit():
    code, out = run(["simulate", "--model", "betaprime", "--d", "2", "--beta", "1.3", "--n", "5", "--reps", "200"])
    assert code == 3
    assert json.loads(out)["rows"][0]["analytic"] is None


def test_table_cone():
    code, out = run(["table", "cone", "--n-range", "3..8", "--d", "2", "--k-range", "1..2"])
    rows = list(csv.DictReader(l for l in out.splitlines() if not l.startswith("#")))
    assert code == 0 and len(rows) == 12
    assert max(float(r["max_residual"]) for r in rows) < 1e-8


def test_table_beta_simplex_rows_and_domain_marker():
    _, out = run(["table", "beta", "--n-range", "4..4", "--d", "3", "--beta", "0"])
    rows = list(csv.DictReader(l for l in out.splitlines() if not l.startswith("#")))
    assert [round(float(r["B_side"]), 9) for r in rows] == [4, 6, 4]
    _, out = run(["table", "betaprime", "--n-range", "3..5", "--d", "2", "--beta", "1.3", "--json"])
    doc = json.loads(out)
    k1 = [r for r in doc["rows"] if r[1] == 1]
    assert all(r[2] == "domain" for r in k1)


def test_numbers_round_trip_17_digits():
    _, out = run(["fvector", "cone", "--n", "9", "--d", "4", "--k", "3", "--csv"])
    value = next(l for l in out.splitlines() if l.startswith("value")).split(",")[-1]
    assert float(repr(float(value))) == float(value)
    assert len(value.replace(".", "").lstrip("0")) <= 17
