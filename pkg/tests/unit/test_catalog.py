"""
Unit tests for the closed-form catalog and the printed series table.
"""

import math

import pytest

from src.catalog import (
    CLOSED_FORMS,
    CatalogRow,
    SERIES_VALUES,
    closed_form_catalog,
    closed_form_entry,
    exact_value,
    printed_decimal,
    rational_arg,
    series_for,
    series_value_entry,
    series_value_table,
)
from src.config import VerifyConfig
from src.errors import DomainError
from src.models import EvaluationResult, Family, Kernel, Method, Status, SumLayout


FLAGGED_IDS = {"SF3", "SF4", "RG40", "RG45"}


def row(table, row_id):
    return next(r for r in table if r.id == row_id)


class TestRows:
    """Static checks on the tables."""

    def test_sizes_and_unique_ids(self):
        assert len(CLOSED_FORMS) == 13
        assert len(SERIES_VALUES) == 13
        ids = [r.id for r in CLOSED_FORMS + SERIES_VALUES]
        assert len(ids) == len(set(ids))

    def test_expressions_parse(self):
        for r in CLOSED_FORMS + SERIES_VALUES:
            assert math.isfinite(float(exact_value(r.expression)))

    def test_printed_decimal(self):
        assert printed_decimal("1/16").startswith("0.0625")
        assert printed_decimal("pi**2/4")[:10] == "2.46740110"

    def test_rational_arg(self):
        assert rational_arg("2/5") == 0.4
        assert rational_arg("6") == 6.0
        assert rational_arg(" 1e-3 ") == 0.001

    @pytest.mark.parametrize("text", ["abc", "1/0", "nan", "", "2/x"])
    def test_rational_arg_rejects(self, text):
        with pytest.raises(DomainError):
            rational_arg(text)

    def test_series_for(self):
        gsum = series_for(Family.PHI3, 2.0)
        assert gsum.layout == SumLayout.BOSE
        assert gsum.constant == 0.0
        (component,) = gsum.components
        assert component.kernel == Kernel.XCOS
        assert component.z0 == pytest.approx(16.0 / math.pi ** 2)


class TestEntries:
    """Computed entries."""

    @pytest.fixture(scope="class")
    def config(self):
        return VerifyConfig()

    @pytest.mark.parametrize("row_id", ["N1", "N3", "RCG11", "RCG15", "SR11"])
    def test_closed_forms_pass(self, row_id, config):
        entry = closed_form_entry(row(CLOSED_FORMS, row_id), config)
        assert entry.status == Status.PASS
        assert entry.routes_agree
        assert not entry.flagged
        assert entry.abs_discrepancy <= config.closed_form_atol
        assert entry.method_computed == "quadrature"

    def test_wrong_closed_form_fails(self, config):
        """A closed form off by 1e-3 fails outright even though both routes agree."""
        wrong = CatalogRow("N1x", Family.PHI1, "1", "1/(2*sqrt(2)) + 1/1000")
        entry = closed_form_entry(wrong, config)
        assert entry.routes_agree
        assert entry.status == Status.FAIL
        assert not entry.flagged
        assert entry.abs_discrepancy == pytest.approx(1e-3, rel=1e-6)
        assert entry.method_oracle == "series"

    def test_rcg14_has_pi_in_denominator(self, config):
        entry = closed_form_entry(row(CLOSED_FORMS, "RCG14"), config)
        assert entry.computed_value == pytest.approx(1.0 / (4.0 * math.pi), abs=1e-11)

    @pytest.mark.parametrize("row_id", ["SF1", "SF2", "NG2", "RG41"])
    def test_series_values_pass(self, row_id, config):
        entry = series_value_entry(row(SERIES_VALUES, row_id), config)
        assert entry.status == Status.PASS
        assert entry.rel_discrepancy <= config.printed_value_rtol

    @pytest.mark.parametrize("row_id", sorted(FLAGGED_IDS))
    def test_misprinted_values_are_flagged(self, row_id, config):
        entry = series_value_entry(row(SERIES_VALUES, row_id), config)
        assert entry.routes_agree
        assert entry.flagged
        assert entry.status == Status.FLAGGED
        assert entry.rel_discrepancy > 1e-3

    def test_rg40_value(self, config):
        """Phi3(2) = 1/16, so the sum is pi^3 / (16 sqrt 2)."""
        entry = series_value_entry(row(SERIES_VALUES, "RG40"), config)
        assert entry.computed_value == pytest.approx(math.pi ** 3 / (16.0 * math.sqrt(2.0)), rel=1e-10)

    def test_disagreeing_routes_fail(self, config, monkeypatch):
        def broken(gsum, cfg=None):
            return EvaluationResult(value=123.0, abs_err_est=0.0, method=Method.SERIES)

        monkeypatch.setattr("src.catalog.eval_gsum", broken)
        entry = series_value_entry(row(SERIES_VALUES, "SF2"), config)
        assert entry.status == Status.FAIL
        assert not entry.flagged


class TestTables:
    """Whole-table evaluation."""

    @pytest.fixture(scope="class")
    def config(self):
        return VerifyConfig()

    def test_closed_form_catalog_order_and_status(self, config):
        entries = closed_form_catalog(config)
        assert [e.id for e in entries] == [r.id for r in CLOSED_FORMS]
        assert all(e.status == Status.PASS for e in entries)

    def test_series_value_table_flags_only_misprints(self, config):
        entries = series_value_table(config)
        assert [e.id for e in entries] == [r.id for r in SERIES_VALUES]
        assert {e.id for e in entries if e.flagged} == FLAGGED_IDS
        assert not any(e.status == Status.FAIL for e in entries)
