"""
Integration tests for the ramanujan_verify command line.

Runs main() in-process and checks exit codes, printed values and the
reports written by the verification suites.
"""

import json

import pytest

from ramanujan_verify import EXIT_DOMAIN, EXIT_FAILED, EXIT_OK, EXIT_TOLERANCE, main
from src.config import CONFIG_ENV_VAR
from src.models import EvaluationResult, Method
from src.reporting import SuiteRunner, render_json


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


class TestEval:
    """eval, gfunc, laplace and catalog commands."""

    def test_phi3_at_two(self, capsys):
        assert main(["eval", "phi3", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("Phi3(2) = 0.0625")
        assert "[series]" in out

    def test_rational_argument_by_quadrature(self, capsys):
        assert main(["eval", "phi3", "2/5", "--route", "quadrature"]) == EXIT_OK
        value = float(capsys.readouterr().out.split("=")[1].split("±")[0])
        assert value == pytest.approx((8.0 - 3.0 * 5.0 ** 0.5) / 16.0, abs=1e-10)

    def test_psi3(self, capsys):
        assert main(["eval", "psi3", "1"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("Psi3(1) = ")

    def test_gfunc(self, capsys):
        assert main(["gfunc", "1/4", "1/2", "3/4", "1/2", "0.5", "--method", "contour"]) == EXIT_OK
        assert "[contour]" in capsys.readouterr().out

    def test_eval_gfunc_form(self, capsys):
        assert main(["eval", "gfunc", "0.25", "0.5", "0.75", "0.5", "2"]) == EXIT_OK
        assert "[residue-series]" in capsys.readouterr().out

    def test_laplace_limit(self, capsys):
        assert main(["laplace", "XCos", "3", "0"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "0.111111111111111" in out
        assert "[limit]" in out

    def test_eval_laplace_form(self, capsys):
        assert main(["eval", "laplace", "Sin", "1", "1", "--route", "quadrature"]) == EXIT_OK
        assert "[quadrature]" in capsys.readouterr().out

    def test_catalog(self, capsys):
        assert main(["catalog"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 13
        assert lines[0].startswith("N1")

    def test_catalog_series(self, capsys):
        assert main(["catalog", "--series"]) == EXIT_OK
        assert "RG45" in capsys.readouterr().out


class TestExitCodes:
    """Errors map onto exit codes."""

    @pytest.mark.parametrize("argv", [
        ["eval", "phi1", "-1"],
        ["eval", "phi1", "0"],
        ["eval", "phi1", "abc"],
        ["eval", "phi1", "1", "2"],
        ["eval", "laplace", "Sin", "0", "1"],
        ["eval", "laplace", "Tan", "1", "1"],
        ["gfunc", "1.5", "0", "0", "0.5", "1"],
        ["gfunc", "0.25", "0.5", "0.75", "0.5", "0"],
    ])
    def test_domain_errors(self, argv, capsys):
        assert main(argv) == EXIT_DOMAIN
        assert capsys.readouterr().err.startswith("Error:")

    def test_bad_override(self):
        assert main(["--set", "bogus=1", "eval", "phi1", "1"]) == EXIT_DOMAIN

    def test_bad_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "absent.env"), "eval", "phi1", "1"]) == EXIT_DOMAIN

    def test_tolerance_not_reached(self, capsys):
        code = main(["--set", "quad_max_panels=1", "eval", "phi1", "1", "--route", "quadrature"])
        assert code == EXIT_TOLERANCE
        assert "tolerance not reached" in capsys.readouterr().err

    def test_failed_check(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["--set", "closed_form_atol=1e-30", "--set", "route_rtol=1e-30",
                     "verify", "closed-forms", "--out", str(out)])
        assert code == EXIT_FAILED
        assert json.loads(out.read_text())["summary"]["failed"] > 0

    def test_non_finite_check_still_reports(self, tmp_path, monkeypatch):
        def poisoned(row, config=None):
            return EvaluationResult(value=float("nan"), abs_err_est=0.0, method=Method.QUADRATURE)

        monkeypatch.setattr("src.reporting.closed_form_entry", poisoned)
        out = tmp_path / "report.json"
        assert main(["verify", "closed-forms", "--out", str(out)]) == EXIT_FAILED
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["summary"]["failed"] == 13
        assert all(item["detail"].startswith("NonFiniteResult") for item in data["items"])


class TestVerify:
    """verify command end to end."""

    def test_closed_forms_json(self, tmp_path, capsys):
        out = tmp_path / "closed.json"
        assert main(["verify", "closed-forms", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["summary"] == {"total": 13, "passed": 13, "failed": 0, "flagged": 0}
        assert "closed-forms: 13/13 pass" in capsys.readouterr().err

    def test_series_values_flagged(self, capsys):
        assert main(["verify", "series-values"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        flagged = sorted(item["id"] for item in data["items"] if item["status"] == "flagged")
        assert flagged == ["RG40", "RG45", "SF3", "SF4"]
        assert data["summary"]["passed"] == 9

    def test_theorems(self, capsys):
        assert main(["verify", "theorems", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 21
        assert all(",pass," in line for line in lines[1:])

    def test_identities_markdown(self, tmp_path):
        out = tmp_path / "identities.md"
        assert main(["verify", "identities", "--format", "markdown", "--out", str(out)]) == EXIT_OK
        assert "**18 pass, 0 fail, 0 flagged** of 18 checks." in out.read_text(encoding="utf-8")

    def test_deterministic(self):
        first = render_json(SuiteRunner().run("closed-forms"), include_timing=False)
        second = render_json(SuiteRunner().run("closed-forms"), include_timing=False)
        assert first == second
