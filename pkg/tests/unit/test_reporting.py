"""
Unit tests for the suite runner and the report exporters.
"""

import json
from io import StringIO

import pandas as pd
import pytest

from src.errors import ToleranceNotReached
from src.models import EvaluationResult, Method, ReportItem, Status
from src.reporting import (
    SCHEMA_VERSION,
    SUITES,
    SuiteRunner,
    export_report,
    render_csv,
    render_json,
    render_markdown,
    report_to_dict,
)


def make_item(item_id: str, status: Status = Status.PASS, detail=None) -> ReportItem:
    return ReportItem(id=item_id, suite="closed-forms", lhs=0.5, rhs=0.5, abs_residual=1e-16,
                      rel_residual=2e-16, status=status, method_lhs="quadrature",
                      method_rhs="series", terms=10, panels=20, detail=detail)


@pytest.fixture
def runner(monkeypatch):
    """SuiteRunner whose closed-forms suite is three cheap canned checks."""
    def failing():
        raise ToleranceNotReached("cap reached", best_value=0.25)

    canned = [
        ("A", "closed-forms", lambda: make_item("A")),
        ("B", "closed-forms", lambda: make_item("B", Status.FLAGGED, detail="printed 1/3")),
        ("C", "closed-forms", failing),
    ]
    runner = SuiteRunner()
    monkeypatch.setattr(runner, "_closed_forms", lambda: canned)
    return runner


@pytest.fixture
def report(runner):
    return runner.run("closed-forms")


class TestSuiteRunner:
    """Suite composition and tallies."""

    def test_check_counts(self):
        runner = SuiteRunner()
        counts = {suite: len(runner.checks(suite)) for suite in SUITES}
        assert counts["theorems"] == 20
        assert counts["companions"] == 15
        assert counts["routes"] == 30 + 8
        assert counts["identities"] == 18
        assert counts["closed-forms"] == 13
        assert counts["series-values"] == 13
        assert counts["all"] == sum(v for k, v in counts.items() if k != "all")

    def test_ids_unique_within_all(self):
        ids = [item_id for item_id, _, _ in SuiteRunner().checks("all")]
        assert len(ids) == len(set(ids))

    def test_series_theorem_ids(self):
        ids = [item_id for item_id, _, _ in SuiteRunner().checks("routes")]
        assert "III_star@2/series" in ids
        assert "Phi1@1/3" in ids

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            SuiteRunner().checks("everything")

    def test_tallies(self, report):
        assert report.schema_version == SCHEMA_VERSION
        assert (report.summary.total, report.summary.passed) == (3, 1)
        assert (report.summary.failed, report.summary.flagged) == (1, 1)

    def test_errors_become_failed_items(self, report):
        failed = report.items[2]
        assert failed.status == Status.FAIL
        assert failed.lhs == 0.25
        assert failed.detail.startswith("ToleranceNotReached")
        assert failed.suite == "closed-forms"

    def test_numerical_faults_become_failed_items(self, monkeypatch):
        def nan_result():
            EvaluationResult(value=float("nan"), abs_err_est=0.0, method=Method.SERIES)

        def zero_division():
            return 1.0 / 0.0

        canned = [
            ("A", "closed-forms", lambda: make_item("A")),
            ("N", "closed-forms", nan_result),
            ("Z", "closed-forms", zero_division),
        ]
        runner = SuiteRunner()
        monkeypatch.setattr(runner, "_closed_forms", lambda: canned)
        report = runner.run("closed-forms")
        assert [i.status for i in report.items] == [Status.PASS, Status.FAIL, Status.FAIL]
        assert report.items[1].detail.startswith("NonFiniteResult")
        assert report.items[2].detail.startswith("ZeroDivisionError")
        assert report.summary.failed == 2

    def test_timing_recorded(self, report):
        assert "total_ms" in report.timing
        assert all(item.time_ms >= 0.0 for item in report.items)


class TestExporters:
    """JSON, CSV and Markdown output."""

    def test_json(self, report):
        data = json.loads(render_json(report))
        assert data["suite"] == "closed-forms"
        assert [item["id"] for item in data["items"]] == ["A", "B", "C"]
        assert data["items"][1]["status"] == "flagged"

    def test_json_without_timing(self, report):
        data = report_to_dict(report, include_timing=False)
        assert "timing" not in data
        assert all("time_ms" not in item for item in data["items"])

    def test_json_deterministic_without_timing(self, runner):
        first = render_json(runner.run("closed-forms"), include_timing=False)
        second = render_json(runner.run("closed-forms"), include_timing=False)
        assert first == second

    def test_csv(self, report):
        frame = pd.read_csv(StringIO(render_csv(report)))
        assert list(frame.columns) == list(ReportItem.model_fields)
        assert list(frame["status"]) == ["pass", "flagged", "fail"]

    def test_markdown(self, report):
        text = render_markdown(report)
        assert text.startswith("# Verification report: closed-forms")
        assert "**1 pass, 1 fail, 1 flagged** of 3 checks." in text
        assert "- **B** (flagged): printed 1/3" in text
        assert "| quad_tol |" in text

    def test_export_writes_file(self, report, tmp_path):
        path = tmp_path / "report.md"
        text = export_report(report, "markdown", path)
        assert path.read_text(encoding="utf-8") == text

    def test_unknown_format(self, report):
        with pytest.raises(ValueError):
            export_report(report, "xml")
