#!/usr/bin/env python3
"""
Ramanujan Verify - numerical verification of Ramanujan's oscillatory integrals

Evaluates the integrals by quadrature and by Meijer G-function series,
evaluates the G-functions themselves, and runs the verification suites.

Usage:
    python ramanujan_verify.py eval phi3 2                       # 0.0625
    python ramanujan_verify.py eval phi1 1 --route quadrature
    python ramanujan_verify.py eval phi3 2/5                     # rational arguments
    python ramanujan_verify.py gfunc 0.25 0.5 0.75 0.5 6.48 --method contour
    python ramanujan_verify.py laplace Sin 1 1
    python ramanujan_verify.py verify all --format json --out report.json
    python ramanujan_verify.py catalog

Exit codes: 0 success, 1 a check failed, 2 domain or configuration error,
3 tolerance not reached.
"""

import argparse
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file (RAMANUJAN_VERIFY_CONFIG)
load_dotenv()

sys.path.insert(0, str(Path(__file__).parent))

from src.catalog import CLOSED_FORMS, SERIES_VALUES, printed_decimal, rational_arg
from src.config import load_config, parse_override
from src.errors import (
    ConfigurationError,
    DomainError,
    InvalidParameters,
    RamanujanVerifyError,
    ToleranceNotReached,
)
from src.laplace_kernels import laplace_eval
from src.meijer_g import g_1331
from src.models import (
    Family,
    GParams131,
    Kernel,
    LaplaceRequest,
    LaplaceRoute,
    Method,
    RamanujanQuantity,
    Route,
)
from src.ramanujan_suite import eval_quantity
from src.reporting import SUITES, SuiteRunner, export_report


logger = logging.getLogger("ramanujan_verify")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_TOLERANCE = 3

QUANTITIES = {
    "phi1": Family.PHI1,
    "psi1": Family.PSI1,
    "phi2": Family.PHI2,
    "psi2": Family.PSI2,
    "phi3": Family.PHI3,
    "psi3": Family.PSI3,
    "psi3star": Family.PSI3_STAR,
}


def parse_real(text: str) -> float:
    """Decimal or rational "p/q" argument, for argparse."""
    try:
        return rational_arg(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_config(args: argparse.Namespace):
    overrides = {}
    for item in args.set or []:
        overrides.update(parse_override(item))
    tol = getattr(args, "tol", None)
    if tol is not None:
        overrides.setdefault("series_tol", str(tol))
        overrides.setdefault("quad_tol", str(tol))
    config = load_config(args.config, overrides)
    logger.debug("effective configuration: %s", config.echo())
    return config


# =============================================================================
# Commands
# =============================================================================

def cmd_eval(args: argparse.Namespace) -> int:
    config = build_config(args)
    if args.quantity == "gfunc":
        return _print_gfunc(args.arg, args.method, config)
    if args.quantity == "laplace":
        if len(args.arg) != 3:
            raise DomainError("eval laplace needs <kernel> <alpha> <beta>")
        return _print_laplace(args.arg[0], rational_arg(args.arg[1]), rational_arg(args.arg[2]), args.route, config)

    if len(args.arg) != 1:
        raise DomainError(f"eval {args.quantity} takes one argument")
    family = QUANTITIES[args.quantity]
    n = rational_arg(args.arg[0])
    result = eval_quantity(RamanujanQuantity(family=family, arg=n), Route(args.route), config)
    print(f"{family.value}({args.arg[0]}) = {result.summary()}")
    return EXIT_OK


def _print_gfunc(values, method, config) -> int:
    if len(values) != 5:
        raise DomainError("gfunc needs <a1> <a2> <a3> <b1> <z>")
    a1, a2, a3, b1, z = (rational_arg(str(v)) for v in values)
    params = GParams131(a1=a1, a2=a2, a3=a3, b1=b1)
    result = g_1331(
        params, z,
        method=Method(method) if method else None,
        spec=config.contour_spec(),
        residue_tol=config.residue_tol,
        max_terms=config.residue_max_terms,
        residue_max_w=config.residue_max_w,
    )
    print(f"G[1,3;3,1]({z:g} | {a1:g}, {a2:g}, {a3:g}; {b1:g}) = {result.summary()}")
    return EXIT_OK


def _print_laplace(kernel: str, alpha: float, beta: float, route: str, config) -> int:
    try:
        kernel_tag = Kernel(kernel)
    except ValueError as e:
        raise DomainError(f"kernel must be one of {', '.join(k.value for k in Kernel)}") from e
    laplace_route = LaplaceRoute.QUADRATURE if route == Route.QUADRATURE.value else LaplaceRoute.G_FUNCTION
    result = laplace_eval(LaplaceRequest(kernel=kernel_tag, alpha=alpha, beta=beta), laplace_route, config)
    print(f"L[{kernel_tag.value}]({alpha:g}, {beta:g}) = {result.summary()}")
    return EXIT_OK


def cmd_gfunc(args: argparse.Namespace) -> int:
    return _print_gfunc([args.a1, args.a2, args.a3, args.b1, args.z], args.method, build_config(args))


def cmd_laplace(args: argparse.Namespace) -> int:
    return _print_laplace(args.kernel, args.alpha, args.beta, args.route, build_config(args))


def cmd_verify(args: argparse.Namespace) -> int:
    config = build_config(args)
    report = SuiteRunner(config).run(args.suite)
    text = export_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    s = report.summary
    print(
        f"{report.suite}: {s.passed}/{s.total} pass, {s.failed} fail, {s.flagged} flagged",
        file=sys.stderr,
    )
    return EXIT_FAILED if s.failed else EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    rows = SERIES_VALUES if args.series else CLOSED_FORMS
    width = max(len(r.id) for r in rows)
    for row in rows:
        print(f"{row.id:<{width}}  {row.family.value}({row.arg})  {row.expression}  = {printed_decimal(row.expression)}")
    return EXIT_OK


# =============================================================================
# Entry point
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Numerical verification of Ramanujan's oscillatory integrals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("Usage:")[1],
    )
    parser.add_argument("--config", type=Path, help="key=value configuration file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override one configuration value (repeatable)")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a Ramanujan integral, a G-function or a Laplace kernel")
    p.add_argument("quantity", choices=[*QUANTITIES, "gfunc", "laplace"])
    p.add_argument("arg", nargs="+", help="argument n (decimal or p/q); see gfunc/laplace for theirs")
    p.add_argument("--route", choices=[r.value for r in Route], default=Route.SERIES.value)
    p.add_argument("--method", choices=[Method.CONTOUR.value, Method.RESIDUE_SERIES.value])
    p.add_argument("--tol", type=float, help="series and quadrature tolerance")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gfunc", help="evaluate G^{1,3}_{3,1}(z | a1, a2, a3; b1)")
    for name in ("a1", "a2", "a3", "b1", "z"):
        p.add_argument(name, type=parse_real)
    p.add_argument("--method", choices=[Method.CONTOUR.value, Method.RESIDUE_SERIES.value])
    p.set_defaults(func=cmd_gfunc)

    p = sub.add_parser("laplace", help="Laplace transform of x^k trig(beta x^2)")
    p.add_argument("kernel", choices=[k.value for k in Kernel])
    p.add_argument("alpha", type=parse_real)
    p.add_argument("beta", type=parse_real)
    p.add_argument("--route", choices=[r.value for r in Route], default=Route.SERIES.value,
                   help="series selects the G-function closed form")
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("catalog", help="list the printed closed forms")
    p.add_argument("--series", action="store_true", help="list the thirteen G-function series instead")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except ToleranceNotReached as e:
        best = f" (best {e.best_value:.15g})" if e.best_value is not None else ""
        print(f"Error: tolerance not reached: {e}{best}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (DomainError, InvalidParameters, ConfigurationError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except RamanujanVerifyError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
