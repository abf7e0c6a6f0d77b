"""
Unit tests for model validation.
"""

import pytest
from pydantic import ValidationError

from src.errors import InvalidParameters, NonFiniteResult
from src.models import (
    EvaluationResult,
    GParams131,
    IdentityReport,
    Method,
    ReportItem,
    RunReport,
    RunSummary,
    Status,
    SummationConfig,
    TailComponent,
)


class TestGParams131:
    def test_empty_strip(self):
        with pytest.raises(InvalidParameters):
            GParams131(a1=2.0, a2=0.0, a3=0.0, b1=0.5)

    def test_integer_gap_rejected(self):
        with pytest.raises(InvalidParameters):
            GParams131(a1=0.5, a2=0.0, a3=0.0, b1=-0.5)

    def test_derived(self):
        params = GParams131(a1=0.25, a2=0.75, a3=0.0, b1=0.0)
        assert params.upper == (0.25, 0.75, 0.0)
        assert params.lam == 2.0
        assert params.omega == pytest.approx(-1.0)

    def test_frozen(self):
        params = GParams131(a1=0.25, a2=0.75, a3=0.0, b1=0.0)
        with pytest.raises(ValidationError):
            params.b1 = 1.0


class TestEvaluationResult:
    def test_summary(self):
        result = EvaluationResult(value=0.0625, abs_err_est=1e-15, method=Method.SERIES,
                                  work={"terms": 12, "evaluations": 30})
        assert result.summary() == "0.0625 ± 1.00e-15 [series] evaluations=30, terms=12"

    def test_negative_estimate_rejected(self):
        with pytest.raises(ValidationError):
            EvaluationResult(value=1.0, abs_err_est=-1.0, method=Method.LIMIT)

    @pytest.mark.parametrize("value,err", [(float("nan"), 0.0), (float("inf"), 0.0), (1.0, float("nan"))])
    def test_non_finite_rejected(self, value, err):
        with pytest.raises(NonFiniteResult):
            EvaluationResult(value=value, abs_err_est=err, method=Method.SERIES)


class TestIdentityReport:
    def test_from_sides(self):
        lhs = EvaluationResult(value=2.0, abs_err_est=0.0, method=Method.SERIES, work={"terms": 5})
        rhs = EvaluationResult(value=2.0 + 1e-9, abs_err_est=0.0, method=Method.QUADRATURE, work={"panels": 7})
        report = IdentityReport.from_sides("I", 1.0, lhs, rhs, 1e-8, "series", "quadrature")
        assert report.passed
        assert report.abs_residual == pytest.approx(1e-9)
        assert report.terms == 5 and report.panels == 7

    def test_tolerance_scales_with_size(self):
        lhs = EvaluationResult(value=1e3, abs_err_est=0.0, method=Method.SERIES)
        rhs = EvaluationResult(value=1e3 + 5e-6, abs_err_est=0.0, method=Method.SERIES)
        assert IdentityReport.from_sides("x", 1.0, lhs, rhs, 1e-8, "s", "s").passed


class TestRunReport:
    @pytest.fixture
    def item(self):
        return ReportItem(id="I@1", suite="theorems", lhs=1.0, rhs=1.0, abs_residual=0.0,
                          rel_residual=0.0, status=Status.PASS, method_lhs="quadrature",
                          method_rhs="quadrature")

    def test_summary_must_match(self, item):
        with pytest.raises(ValidationError):
            RunReport(schema_version="1.0.0", tool_version="1.0.0", suite="theorems", config={},
                      items=[item], summary=RunSummary(total=1, failed=1))

    def test_valid(self, item):
        report = RunReport(schema_version="1.0.0", tool_version="1.0.0", suite="theorems", config={},
                           items=[item], summary=RunSummary(total=1, passed=1))
        assert report.timing == {}


def test_tail_component_at():
    comp = TailComponent(coefficient=2.0, exponent=3.0, offset=2, stride=3)
    assert comp.at(1) == pytest.approx(2.0 / 125.0)


def test_summation_config_fields_are_all_consumed():
    """Every field steers sum_series; the double-sum order lives in diagonal_coefficient."""
    assert set(SummationConfig.model_fields) == {"tol", "max_terms", "min_terms", "acceleration"}
