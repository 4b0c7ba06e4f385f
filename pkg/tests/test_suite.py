import pytest

from extkoszul.suite import CHECKS, FAIL, PASS, Report, verify_paper

FAST = ["path7-hilbert", "path7-regular-quotient", "no-graph-with-series", "thieu-scan-and-change",
        "principal-froberg", "two-triangle-gb-pencil", "claim-ideal-hilbert"]


def test_thirteen_checks():
    assert len(CHECKS) == 13


@pytest.mark.parametrize("name", FAST)
def test_corruption_makes_check_fail(name):
    rep = verify_paper(corrupt=name, only=[name])
    assert rep.checks[0].status == FAIL


@pytest.mark.parametrize("name", [n for n in FAST if n != "claim-ideal-hilbert"])
def test_fast_checks_pass(name):
    assert verify_paper(only=[name]).checks[0].status == PASS


def test_claim_ideal_check_reports_computed_series():
    c = verify_paper(only=["claim-ideal-hilbert"]).checks[0]
    assert c.status == FAIL
    assert c.actual == {"hilbert": [1, 7, 15, 9]}


def test_report_is_deterministic_without_timings():
    a = verify_paper(seed=1, only=FAST).to_json(timings=False)
    b = verify_paper(seed=1, only=FAST).to_json(timings=False)
    assert a == b
    assert a["session"]["seed"] == 1


def test_exit_codes():
    assert Report({}, []).exit_code == 0
    rep = verify_paper(only=["principal-froberg"], corrupt="principal-froberg")
    assert rep.exit_code == 1
