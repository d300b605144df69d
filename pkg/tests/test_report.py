import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

from polycover.polytopes import PolytopeKind as K
from polycover.report import (
    CRITERIA, REPORT_SCHEMA, RunConfig, VerificationReport, export_report, report_csv, report_json,
    report_markdown, run_full_verification,
)

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="module")
def cell16_report():
    return run_full_verification(RunConfig(kinds=("cell16",), mesh_ladder=(1,)))


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(tol=0)
    with pytest.raises(ValueError):
        RunConfig(mesh_ladder=(2, 1))
    assert RunConfig(kinds=("5-cell",)).kinds == (K.CELL5,)


def test_every_criterion_appears_once(cell16_report):
    assert [c.number for c in cell16_report.criteria] == list(range(1, len(CRITERIA) + 1))


def test_cell16_cover_is_expected_fail(cell16_report):
    c3 = cell16_report.criteria[2]
    assert c3.status == "expected-fail"
    assert [ch.status for ch in c3.checks] == ["expected-fail"]


def test_single_level_ladder_skips_link_checks(cell16_report):
    c9 = cell16_report.criteria[8]
    assert c9.status == "skipped"
    assert all("insufficient refinement" in ch.note for ch in c9.checks)


def test_out_of_scope_criterion(cell16_report):
    assert cell16_report.criteria[9].status == "out-of-scope"
    assert cell16_report.passed


def test_json_matches_schema(cell16_report):
    jsonschema.validate(json.loads(report_json(cell16_report)), REPORT_SCHEMA)


def test_published_schema_is_current():
    assert json.loads((ROOT / "docs" / "report.schema.json").read_text()) == REPORT_SCHEMA


def test_csv_has_one_row_per_check(cell16_report):
    rows = list(csv.reader(io.StringIO(report_csv(cell16_report))))
    assert rows[0][:5] == ["criterion", "check", "expected", "computed", "status"]
    assert len(rows) - 1 == sum(len(c.checks) for c in cell16_report.criteria)


def test_markdown_table(cell16_report):
    md = report_markdown(cell16_report)
    assert md.splitlines()[0] == "| # | criterion | status | checks |"
    assert "## 3. " in md


def test_exports_are_deterministic(tmp_path):
    cfg = RunConfig(kinds=("cell5", "cell8"), mesh_ladder=(1,))
    a = export_report(run_full_verification(cfg, only={1, 3, 5, 6, 8}), tmp_path / "a")
    b = export_report(run_full_verification(cfg, only={1, 3, 5, 6, 8}), tmp_path / "b")
    for pa, pb in zip(a, b):
        if pa.name != "timings.json":
            assert pa.read_bytes() == pb.read_bytes()
    assert {p.name for p in a} == {"report.json", "report.csv", "report.md", "timings.json"}


def test_floats_printed_with_twelve_digits():
    rep = run_full_verification(RunConfig(kinds=("cell5",)), only={7})
    computed = rep.criteria[0].checks[0].computed
    assert computed.startswith("(0.36602540377")
    assert all(len(x.strip(" ()-").replace(".", "").lstrip("0")) <= 12 for x in computed.split(","))


def test_failing_report_is_not_passed():
    from polycover.report import CriterionResult

    bad = CriterionResult(1, "x")
    bad.add("check", 1, 2, False, "trivial")
    assert not VerificationReport(RunConfig(), [bad]).passed
