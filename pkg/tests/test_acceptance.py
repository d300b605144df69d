"""Acceptance suite: one printed PASS/FAIL line per criterion.

Criterion 9 contains a sub-check (non-shrinking margin of the sector
eigenvalue above 1) that a conforming discretization cannot meet, since its
eigenvalue upper bounds decrease under refinement. It is implemented as
stated, reported as FAIL, and marked as a strict expected failure here.
"""

import pytest

from polycover.report import CRITERIA, RunConfig, run_full_verification

KNOWN_RED = {9}


@pytest.fixture(scope="module")
def report():
    return run_full_verification(RunConfig())


def _line(c) -> str:
    verdict = {"fail": "FAIL", "out-of-scope": "N/A"}.get(c.status, "PASS")
    ok = sum(ch.ok for ch in c.checks)
    return f"criterion {c.number:>2}: {verdict:<4} [{c.status}] {c.title} ({ok}/{len(c.checks)} checks)"


@pytest.mark.parametrize("number", [
    pytest.param(n, marks=pytest.mark.xfail(strict=True, reason="non-shrinking margin is unattainable"))
    if n in KNOWN_RED else n
    for n in range(1, len(CRITERIA) + 1)
])
def test_criterion(report, number, capsys):
    c = report.criteria[number - 1]
    assert c.number == number
    with capsys.disabled():
        print("\n" + _line(c))
        for ch in c.checks:
            if not ch.ok:
                print(f"    FAIL {ch.name}: expected {ch.expected}, computed {ch.computed}")
    assert c.status in ("pass", "out-of-scope"), c.status


def test_criterion_9_other_checks_pass(report):
    c9 = report.criteria[8]
    failing = [ch.name for ch in c9.checks if not ch.ok]
    assert failing == ["5-cell Z/3 sector margin non-shrinking at the two finest levels"]


def test_report_is_red_only_because_of_criterion_9(report):
    assert not report.passed
    assert [c.number for c in report.criteria if c.status == "fail"] == [9]
