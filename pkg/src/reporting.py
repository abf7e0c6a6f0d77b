"""
Verification suites and run reports.

A suite is an ordered list of checks. Each check produces one ReportItem;
the RunReport carries the items, their tallies and the configuration used,
and is written as JSON, CSV (pandas) or Markdown (Jinja2 template).
"""

import json
import logging
import math
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
from jinja2 import Environment, FileSystemLoader

from .catalog import CLOSED_FORMS, SERIES_VALUES, closed_form_entry, rational_arg, series_value_entry
from .config import DEFAULT_CONFIG, VerifyConfig
from .errors import RamanujanVerifyError
from .models import (
    ClosedFormEntry,
    Family,
    IdentityReport,
    ReportItem,
    Route,
    RunReport,
    RunSummary,
    Status,
    SummationIdentity,
    Theorem,
)
from .ramanujan_suite import route_check, summation_identity_check, theorem_check


# Version tracking
__version__ = "1.0.0"
SCHEMA_VERSION = "1.0.0"

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"

# Argument grids, kept as exact strings for item ids
THEOREM_GRID = ("1/3", "1/2", "1", "2", "5")
SERIES_THEOREM_GRID = ("1", "2")
IDENTITY_GRID = ("1/2", "1", "2")
ROUTE_FAMILIES = (Family.PHI1, Family.PSI1, Family.PHI2, Family.PSI2, Family.PHI3, Family.PSI3_STAR)

MAIN_THEOREMS = (Theorem.I, Theorem.II, Theorem.III, Theorem.III_STAR)
COMPANION_THEOREMS = (Theorem.I_PRIME, Theorem.II_PRIME, Theorem.III_PRIME)

SUITES = ("theorems", "companions", "routes", "identities", "closed-forms", "series-values", "all")

# Fields that change between identical runs
TIMING_FIELDS = ("time_ms", "timing")


# =============================================================================
# Item conversion
# =============================================================================

def item_from_identity(report: IdentityReport, suite: str, item_id: str) -> ReportItem:
    return ReportItem(
        id=item_id,
        suite=suite,
        lhs=report.lhs,
        rhs=report.rhs,
        abs_residual=report.abs_residual,
        rel_residual=report.rel_residual,
        status=Status.PASS if report.passed else Status.FAIL,
        method_lhs=report.method_lhs,
        method_rhs=report.method_rhs,
        terms=report.terms,
        panels=report.panels,
    )


def item_from_entry(entry: ClosedFormEntry, suite: str) -> ReportItem:
    """lhs is the computed value, rhs the independent route; the printed value goes to detail."""
    residual = abs(entry.computed_value - entry.oracle_value)
    return ReportItem(
        id=entry.id,
        suite=suite,
        lhs=entry.computed_value,
        rhs=entry.oracle_value,
        abs_residual=residual,
        rel_residual=residual / max(abs(entry.oracle_value), 1e-300),
        status=entry.status,
        method_lhs=entry.method_computed,
        method_rhs=entry.method_oracle,
        terms=entry.terms,
        panels=entry.panels,
        detail=(
            f"{entry.quantity}: printed {entry.expression} = {entry.printed_decimal}, "
            f"relative discrepancy {entry.rel_discrepancy:.3e}"
        ),
    )


def _failed_item(item_id: str, suite: str, error: Exception) -> ReportItem:
    best = getattr(error, "best_value", None)
    return ReportItem(
        id=item_id,
        suite=suite,
        lhs=best if best is not None and math.isfinite(best) else 0.0,
        rhs=0.0,
        abs_residual=0.0,
        rel_residual=0.0,
        status=Status.FAIL,
        method_lhs="error",
        method_rhs="error",
        detail=f"{type(error).__name__}: {error}",
    )


# =============================================================================
# Suite runner
# =============================================================================

Check = Tuple[str, str, Callable[[], ReportItem]]


class SuiteRunner:
    """
    Builds and runs the verification suites for one configuration.

    Checks run sequentially in declaration order, so reports from identical
    configurations list identical items in identical order.
    """

    def __init__(self, config: Optional[VerifyConfig] = None):
        self.config = config or DEFAULT_CONFIG

    def checks(self, suite: str) -> List[Check]:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        if suite == "all":
            return [c for name in SUITES[:-1] for c in self.checks(name)]
        return getattr(self, "_" + suite.replace("-", "_"))()

    def _theorem_checks(self, suite: str, theorems, grid, route: Route) -> List[Check]:
        cfg = self.config
        checks = []
        for which in theorems:
            for arg in grid:
                item_id = f"{which.value}@{arg}" + ("" if route == Route.QUADRATURE else f"/{route.value}")
                checks.append((item_id, suite, lambda w=which, a=arg, i=item_id: item_from_identity(
                    theorem_check(w, rational_arg(a), route, cfg), suite, i)))
        return checks

    def _theorems(self) -> List[Check]:
        return self._theorem_checks("theorems", MAIN_THEOREMS, THEOREM_GRID, Route.QUADRATURE)

    def _companions(self) -> List[Check]:
        return self._theorem_checks("companions", COMPANION_THEOREMS, THEOREM_GRID, Route.QUADRATURE)

    def _routes(self) -> List[Check]:
        cfg = self.config
        checks = []
        for family in ROUTE_FAMILIES:
            for arg in THEOREM_GRID:
                item_id = f"{family.value}@{arg}"
                checks.append((item_id, "routes", lambda f=family, a=arg, i=item_id: item_from_identity(
                    route_check(f, rational_arg(a), cfg), "routes", i)))
        checks += self._theorem_checks("routes", MAIN_THEOREMS, SERIES_THEOREM_GRID, Route.SERIES)
        return checks

    def _identities(self) -> List[Check]:
        cfg = self.config
        checks = []
        for identity in SummationIdentity:
            for arg in IDENTITY_GRID:
                item_id = f"{identity.value}@{arg}"
                checks.append((item_id, "identities", lambda s=identity, a=arg, i=item_id: item_from_identity(
                    summation_identity_check(s, rational_arg(a), cfg), "identities", i)))
        return checks

    def _closed_forms(self) -> List[Check]:
        cfg = self.config
        return [
            (row.id, "closed-forms", lambda r=row: item_from_entry(closed_form_entry(r, cfg), "closed-forms"))
            for row in CLOSED_FORMS
        ]

    def _series_values(self) -> List[Check]:
        cfg = self.config
        return [
            (row.id, "series-values", lambda r=row: item_from_entry(series_value_entry(r, cfg), "series-values"))
            for row in SERIES_VALUES
        ]

    def run(self, suite: str) -> RunReport:
        """Run one suite and tally its items."""
        start = time.perf_counter()
        items = []
        for item_id, item_suite, check in self.checks(suite):
            item_start = time.perf_counter()
            try:
                item = check()
            except RamanujanVerifyError as e:
                logger.warning("check %s failed: %s", item_id, e)
                item = _failed_item(item_id, item_suite, e)
            except (ArithmeticError, ValueError) as e:
                logger.exception("check %s raised a numerical fault", item_id)
                item = _failed_item(item_id, item_suite, e)
            item.time_ms = round(1000.0 * (time.perf_counter() - item_start), 3)
            if item.status == Status.FAIL:
                logger.warning("%s: residual %.3e", item_id, item.abs_residual)
            items.append(item)

        summary = RunSummary(
            total=len(items),
            passed=sum(i.status == Status.PASS for i in items),
            failed=sum(i.status == Status.FAIL for i in items),
            flagged=sum(i.status == Status.FLAGGED for i in items),
        )
        elapsed = time.perf_counter() - start
        logger.info(
            "suite %s: %d items (%d pass, %d fail, %d flagged) in %.2fs",
            suite, summary.total, summary.passed, summary.failed, summary.flagged, elapsed,
        )
        return RunReport(
            schema_version=SCHEMA_VERSION,
            tool_version=__version__,
            suite=suite,
            config=self.config.echo(),
            items=items,
            summary=summary,
            timing={"total_ms": round(1000.0 * elapsed, 3)},
        )


# =============================================================================
# Exporters
# =============================================================================

def report_to_dict(report: RunReport, include_timing: bool = True) -> Dict:
    data = report.model_dump(mode="json")
    if not include_timing:
        for field in TIMING_FIELDS:
            data.pop(field, None)
            for item in data["items"]:
                item.pop(field, None)
    return data


def render_json(report: RunReport, include_timing: bool = True) -> str:
    return json.dumps(report_to_dict(report, include_timing), indent=2, ensure_ascii=False) + "\n"


def render_csv(report: RunReport) -> str:
    """One row per item, columns in ReportItem field order."""
    rows = [item.model_dump(mode="json") for item in report.items]
    frame = pd.DataFrame(rows, columns=list(ReportItem.model_fields))
    return frame.to_csv(index=False, float_format="%.15g")


def render_markdown(report: RunReport) -> str:
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    return env.get_template("report.md.j2").render(report=report)


RENDERERS: Dict[str, Callable[[RunReport], str]] = {
    "json": render_json,
    "csv": render_csv,
    "markdown": render_markdown,
}


def export_report(report: RunReport, fmt: str, output_path: Optional[Path] = None) -> str:
    """Render the report; write it when a path is given."""
    if fmt not in RENDERERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(RENDERERS)}")
    text = RENDERERS[fmt](report)
    if output_path:
        Path(output_path).write_text(text, encoding="utf-8")
        logger.info("%s report saved to %s", fmt, output_path)
    return text
