import pytest

from betapoly import verify as V


def test_manifest_shape():
    m = V.load_grids()
    assert m["version"] >= 1
    for grid in ("default", "extended"):
        assert set(m["grids"][grid]) == set(V.SUITES)


def test_relations_small():
    assert V.curly_B_relation(2.0, 3.5, 1.5) <= 1e-12
    assert V.curly_A_relation(3.0, 4.0, 1.0) <= 1e-12
    assert V.tilde_B_relation(0.5, 6.5, 4.5) <= 1e-12
    assert V.tilde_A_relation(7.0, 3.5, 0.5) <= 1e-12
    assert V.a_recurrence_residual(5, -3) <= 1e-12
    assert V.b_recurrence_residual(7, 2) <= 1e-12


@pytest.mark.parametrize("suite", V.SUITES)
def test_default_suites_pass(suite):
    report = V.run_suite(suite)
    s = report["suites"][suite]
    assert s["passed"], [c for c in s["checks"] if not c["passed"]]
    assert all(c["checked"] > 0 for c in s["checks"])


def test_skips_are_reported():
    s = V.run_suite("beta")["suites"]["beta"]
    skipped = sum(len(c["skipped"]) for c in s["checks"])
    assert skipped > 0
    entry = next(c for c in s["checks"] if c["skipped"])["skipped"][0]
    assert entry["reason"] and entry["at"]


def test_expected_failure_probe_is_reported():
    s = V.run_suite("cones")["suites"]["cones"]
    cor = next(c for c in s["checks"] if c["expected_failures"])
    assert len(cor["expected_failures"]) > 0
    assert cor["passed"]


def test_tight_tolerance_fails():
    report = V.run_suite("cones", tol=1e-18)
    assert not report["passed"]
    failing = [c for c in report["suites"]["cones"]["checks"] if c["failures"]]
    assert failing and "at" in failing[0]["failures"][0]


def test_unknown_names():
    with pytest.raises(ValueError):
        V.run_suite("nope")
    with pytest.raises(ValueError):
        V.run_suite("cones", grid="huge")
