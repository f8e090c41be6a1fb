import pytest

from isogauss import Budget, SUITES, VerifyReport, max_dim_for, run_suite


def test_suite_names():
    assert list(SUITES) == [
        "thm11",
        "cor12",
        "prop41",
        "lemma51",
        "lemma52",
        "lemma53",
        "lemma54",
        "scalars",
        "untwisted",
        "zero_forms",
    ]
    with pytest.raises(ValueError):
        run_suite("nope")


def test_default_grid_clamp():
    b = Budget()
    assert max_dim_for(3, b) == 5
    assert max_dim_for(5, b) == 4
    assert max_dim_for(7, b) == 3
    assert max_dim_for(3, Budget(max_terms=27)) == 2
    assert max_dim_for(11, Budget(max_terms=10)) == 0


def test_thm11_small_grid():
    reports = run_suite("thm11", primes=(3,), max_n=2)
    assert len(reports) == 8
    assert all(r.match and not r.skipped for r in reports)
    seen = {(r.instance["n"], r.instance["d"], r.instance["disc"]) for r in reports}
    assert ("1", "0") not in seen  # keys are ints
    assert (2, 0, "sq") in seen
    assert (2, 2, "nonsq") in seen
    assert len(seen) == 8


def test_thm11_budget_clamps_cells():
    # a 27-term budget admits n = 1, 2 at p = 3 and nothing at p = 11
    reports = run_suite("thm11", primes=(3,), max_n=99, budget=Budget(max_terms=27))
    assert len(reports) == 8
    assert run_suite("thm11", primes=(11,), budget=Budget(max_terms=10)) == []


def test_scalars_reports():
    reports = run_suite("scalars", primes=(3, 5, 7))
    assert len(reports) == 6
    assert all(r.match for r in reports)
    facts = [r.instance["fact"] for r in reports]
    assert facts.count("g_squared") == 3
    assert facts.count("omega_negates") == 3


def test_zero_forms_small():
    reports = run_suite("zero_forms", primes=(3,), max_n=3)
    assert [(r.instance["n"], r.instance["r"]) for r in reports] == [
        (1, 1),
        (2, 2),
        (2, 1),
        (3, 3),
        (3, 1),
        (3, 2),
    ]
    assert all(r.match for r in reports)
    for r in reports:
        if r.instance["n"] % 2 == 1 and r.instance["r"] == r.instance["n"]:
            assert r.lhs == r.rhs == "[0,0]"


def test_budget_turns_reports_into_skips():
    reports = run_suite("untwisted", primes=(3,), budget=Budget(max_terms=50))
    assert len(reports) == 12
    passed = [r for r in reports if r.match]
    skipped = [r for r in reports if r.skipped]
    assert len(passed) == 4 and all(r.instance["n"] == 1 for r in passed)
    assert len(skipped) == 8
    assert not any((not r.match) and (not r.skipped) for r in reports)
    for r in skipped:
        assert r.lhs == r.rhs == ""
        assert "budget" in r.reason


def test_report_json_shape():
    (report,) = run_suite("zero_forms", primes=(3,), max_n=1)
    js = report.to_json()
    assert set(js) == {
        "suite",
        "instance",
        "lhs",
        "rhs",
        "match",
        "elapsed",
        "skipped",
        "reason",
    }
    assert js["suite"] == "zero_forms"
    assert js["match"] is True
    assert js["skipped"] is False
    assert isinstance(js["elapsed"], float) and js["elapsed"] >= 0
    assert isinstance(report, VerifyReport)


def test_deterministic_ordering():
    a = run_suite("lemma52", primes=(3,), max_n=1)
    b = run_suite("lemma52", primes=(3,), max_n=1)
    assert [r.instance for r in a] == [r.instance for r in b]
    assert [(r.lhs, r.rhs, r.match) for r in a] == [(r.lhs, r.rhs, r.match) for r in b]
    assert len(a) == 5  # odd/even_match at m = 0, all three at m = 1
