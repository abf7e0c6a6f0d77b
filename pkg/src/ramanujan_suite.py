"""
Ramanujan's oscillatory integrals and the identities between them.

    Phi1(n)  = int cos(pi n x^2) / cosh(pi x) dx
    Psi1(n)  = int sin(pi n x^2) / cosh(pi x) dx
    Phi2(n)  = int cos(pi n x^2) / (1 + 2 cosh(2 pi x / sqrt 3)) dx
    Psi2(n)  = int sin(pi n x^2) / (1 + 2 cosh(2 pi x / sqrt 3)) dx
    Phi3(n)  = int cos(pi n x) / (e^{2 pi sqrt x} - 1) dx
    Psi3*(n) = int sin(pi n x) / (e^{2 pi sqrt x} - 1) dx
    Psi3(n)  = 1/(2 pi n) + Psi3*(n)

all over [0, inf). The series route expands the kernel into exponentials
and sums Laplace transforms of trig(pi n x^2); the quadrature route
integrates directly. Summation identities are assembled from G-function
sums exactly as printed, without going through the integrals.
"""

import logging
import math
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .config import DEFAULT_CONFIG, VerifyConfig
from .errors import DomainError
from .laplace_kernels import kernel_spec, laplace_asymptotic_terms, laplace_eval
from .meijer_g import g_1331, small_argument_terms
from .models import (
    AccelerationKind,
    EvaluationResult,
    Family,
    GComponent,
    GSum,
    IdentityReport,
    Kernel,
    LaplaceRequest,
    Method,
    RamanujanQuantity,
    Route,
    SumLayout,
    SummationIdentity,
    TailComponent,
    Theorem,
)
from .quadrature import family_integrand, integrate
from .series_engine import (
    TRIPLE_COSH_RATE,
    bose_expansion,
    cosh_expansion,
    diagonal_coefficient,
    regrouped_coefficient,
    sum_series,
)


logger = logging.getLogger(__name__)

# Terms of the asymptotic models behind the zeta tails
TAIL_ORDER = 8

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Family -> (kernel of the series route, G-sum scale)
_SERIES_KERNEL: Dict[Family, Kernel] = {
    Family.PHI1: Kernel.COS,
    Family.PSI1: Kernel.SIN,
    Family.PHI2: Kernel.COS,
    Family.PSI2: Kernel.SIN,
    Family.PHI3: Kernel.XCOS,
    Family.PSI3_STAR: Kernel.XSIN,
}

FAMILY_SCALE: Dict[Family, float] = {
    Family.PHI1: math.pi ** 2 / SQRT2,
    Family.PSI1: math.pi ** 2 / SQRT2,
    Family.PHI2: 2.0 * SQRT2 * math.pi ** 2 / SQRT3,
    Family.PSI2: 2.0 * SQRT2 * math.pi ** 2 / SQRT3,
    Family.PHI3: math.pi ** 3 / SQRT2,
    Family.PSI3_STAR: math.pi ** 3 / SQRT2,
}


class _Ledger:
    """Error and work of the component evaluations a summation consumed."""

    def __init__(self):
        self.err = 0.0
        self.evaluations = 0

    def take(self, coefficient: float, result: EvaluationResult) -> float:
        self.err += abs(coefficient) * result.abs_err_est
        self.evaluations += 1
        return coefficient * result.value

    def close(self, summed: EvaluationResult, offset: float = 0.0) -> EvaluationResult:
        return EvaluationResult(
            value=summed.value + offset,
            abs_err_est=summed.abs_err_est + self.err,
            method=Method.SERIES,
            work={"terms": summed.work.get("terms", 0), "evaluations": self.evaluations},
        )


def _combine(parts: Sequence[Tuple[float, EvaluationResult]], constant: float = 0.0,
             method: Optional[Method] = None) -> EvaluationResult:
    """Linear combination of results; estimates add in absolute value, work counters add."""
    work: Dict[str, int] = {}
    for _, r in parts:
        for key, count in r.work.items():
            work[key] = work.get(key, 0) + count
    return EvaluationResult(
        value=constant + sum(c * r.value for c, r in parts),
        abs_err_est=sum(abs(c) * r.abs_err_est for c, r in parts) + 4e-16 * abs(constant),
        method=method or parts[0][1].method,
        work=work,
    )


# =============================================================================
# Series route
# =============================================================================

def _laplace(kernel: Kernel, alpha: float, beta: float, config: VerifyConfig) -> EvaluationResult:
    return laplace_eval(LaplaceRequest(kernel=kernel, alpha=alpha, beta=beta), config=config)


def _series_cosh(kernel: Kernel, n: float, config: VerifyConfig) -> EvaluationResult:
    ledger = _Ledger()
    beta = math.pi * n

    def terms() -> Iterator[float]:
        r = 0
        while True:
            term = cosh_expansion(r)
            yield ledger.take(term.coefficient, _laplace(kernel, term.rate, beta, config))
            r += 1

    summed = sum_series(terms(), config.summation_config(AccelerationKind.ALTERNATING))
    return ledger.close(summed)


def _series_triple_cosh(kernel: Kernel, n: float, config: VerifyConfig,
                        coefficient: Callable[[int], int] = diagonal_coefficient) -> EvaluationResult:
    """
    Blocks of three diagonals d = 3k, 3k+1, 3k+2 of the (p, q) double sum.

    Every (p, q) with p + 2q = d decays at the rate 2 pi (d + 1)/sqrt 3, so a
    diagonal needs one transform at its summed coefficient.
    """
    ledger = _Ledger()
    beta = math.pi * n

    def blocks() -> Iterator[float]:
        k = 0
        while True:
            block = 0.0
            for d in range(3 * k, 3 * k + 3):
                c = coefficient(d)
                if c:
                    block += ledger.take(c, _laplace(kernel, TRIPLE_COSH_RATE * (d + 1), beta, config))
            yield block
            k += 1

    tail = [
        TailComponent(sign * c * TRIPLE_COSH_RATE ** (-p), p, offset=h, stride=3)
        for h, sign in ((1, 1.0), (2, -1.0))
        for c, p in laplace_asymptotic_terms(kernel, beta, TAIL_ORDER)
    ]
    summed = sum_series(blocks(), config.summation_config(AccelerationKind.ZETA_TAIL), tail, consecutive=2)
    return ledger.close(summed)


def _series_bose(kernel: Kernel, n: float, config: VerifyConfig) -> EvaluationResult:
    # t = sqrt(x) turns the measure into 2t dt, hence the x-kernels and the factor 2
    ledger = _Ledger()
    beta = math.pi * n

    def terms() -> Iterator[float]:
        r = 0
        while True:
            term = bose_expansion(r)
            yield ledger.take(2.0 * term.coefficient, _laplace(kernel, term.rate, beta, config))
            r += 1

    rate = bose_expansion(0).rate
    tail = [
        TailComponent(2.0 * c * rate ** (-p), p)
        for c, p in laplace_asymptotic_terms(kernel, beta, TAIL_ORDER)
    ]
    summed = sum_series(terms(), config.summation_config(AccelerationKind.ZETA_TAIL), tail)
    return ledger.close(summed)


def _series_route(family: Family, n: float, config: VerifyConfig) -> EvaluationResult:
    kernel = _SERIES_KERNEL[family]
    if family in (Family.PHI1, Family.PSI1):
        return _series_cosh(kernel, n, config)
    if family in (Family.PHI2, Family.PSI2):
        return _series_triple_cosh(kernel, n, config)
    return _series_bose(kernel, n, config)


def eval_regrouped(q: RamanujanQuantity, config: Optional[VerifyConfig] = None) -> EvaluationResult:
    """
    Phi2/Psi2 from 1/(1 + 2 cosh t) = sum_k (e^{-(3k+1)t} - e^{-(3k+2)t}).

    A cross-check derived from the kernel identity; it shares the Laplace
    transforms with the double sum but none of its coefficients.
    """
    if q.family not in (Family.PHI2, Family.PSI2):
        raise DomainError(f"regrouped route covers Phi2 and Psi2 only, got {q.family.value}")
    config = config or DEFAULT_CONFIG
    return _series_triple_cosh(_SERIES_KERNEL[q.family], q.arg, config, regrouped_coefficient)


# =============================================================================
# Public evaluators
# =============================================================================

def eval_quantity(
    q: RamanujanQuantity,
    route: Route = Route.SERIES,
    config: Optional[VerifyConfig] = None,
) -> EvaluationResult:
    """
    Evaluate one Ramanujan integral.

    Args:
        q: family and argument n > 0
        route: G-function series or direct quadrature
        config: tolerances

    Returns:
        EvaluationResult tagged series or quadrature
    """
    config = config or DEFAULT_CONFIG
    n = q.arg
    if q.family == Family.PSI3:
        star = eval_quantity(RamanujanQuantity(family=Family.PSI3_STAR, arg=n), route, config)
        return _combine([(1.0, star)], constant=1.0 / (2.0 * math.pi * n))

    if route == Route.QUADRATURE:
        extrapolate = q.family in (Family.PHI3, Family.PSI3_STAR)
        result = integrate(family_integrand(q.family, n), config.quadrature_config(extrapolate))
    else:
        result = _series_route(q.family, n, config)
    logger.debug("%s(%g) by %s: %s", q.family.value, n, route.value, result.summary())
    return result


def evaluate(family: Family, n: float, route: Route = Route.SERIES,
             config: Optional[VerifyConfig] = None) -> EvaluationResult:
    return eval_quantity(RamanujanQuantity(family=family, arg=n), route, config)


# =============================================================================
# Theorems
# =============================================================================

def _reciprocal_weight(n: float) -> float:
    return math.sqrt(2.0 / n)


def _shifted_weight(n: float) -> float:
    return math.sqrt(2.0 / n) / n


# Theorem -> (lhs family, rhs terms (weight(n), family, at 1/n?), constant(n))
_THEOREMS = {
    Theorem.I: (Family.PHI1, [(_reciprocal_weight, Family.PSI1, True), (lambda n: 1.0, Family.PSI1, False)], None),
    Theorem.I_PRIME: (Family.PSI1, [(_reciprocal_weight, Family.PHI1, True), (lambda n: -1.0, Family.PHI1, False)], None),
    Theorem.II: (Family.PHI2, [(_reciprocal_weight, Family.PSI2, True), (lambda n: 1.0, Family.PSI2, False)], None),
    Theorem.II_PRIME: (Family.PSI2, [(_reciprocal_weight, Family.PHI2, True), (lambda n: -1.0, Family.PHI2, False)], None),
    Theorem.III: (Family.PHI3, [(_shifted_weight, Family.PSI3, True), (lambda n: -1.0, Family.PSI3, False)], None),
    Theorem.III_PRIME: (Family.PSI3, [(_shifted_weight, Family.PHI3, True), (lambda n: 1.0, Family.PHI3, False)], None),
    Theorem.III_STAR: (
        Family.PSI3_STAR,
        [(_shifted_weight, Family.PHI3, True), (lambda n: 1.0, Family.PHI3, False)],
        lambda n: -1.0 / (2.0 * math.pi * n),
    ),
}


def theorem_sides(which: Theorem, n: float, route: Route = Route.QUADRATURE,
                  config: Optional[VerifyConfig] = None) -> Tuple[EvaluationResult, EvaluationResult]:
    if not n > 0:
        raise DomainError(f"argument n must be positive, got {n}")
    lhs_family, rhs_terms, constant = _THEOREMS[Theorem(which)]
    lhs = evaluate(lhs_family, n, route, config)
    parts = [
        (weight(n), evaluate(family, 1.0 / n if reciprocal else n, route, config))
        for weight, family, reciprocal in rhs_terms
    ]
    rhs = _combine(parts, constant=constant(n) if constant else 0.0)
    return lhs, rhs


def theorem_check(which: Theorem, n: float, route: Route = Route.QUADRATURE,
                  config: Optional[VerifyConfig] = None) -> IdentityReport:
    """
    Evaluate both sides of a reciprocity theorem by one route.

    I:   Phi1(n) = sqrt(2/n) Psi1(1/n) + Psi1(n)
    II:  Phi2(n) = sqrt(2/n) Psi2(1/n) + Psi2(n)
    III: Phi3(n) = (1/n) sqrt(2/n) Psi3(1/n) - Psi3(n)
    III_star: Psi3*(n) = (1/n) sqrt(2/n) Phi3(1/n) + Phi3(n) - 1/(2 pi n)
    The _prime forms solve the same relations for the other family.
    """
    config = config or DEFAULT_CONFIG
    which = Theorem(which)
    lhs, rhs = theorem_sides(which, n, route, config)
    report = IdentityReport.from_sides(
        which.value, n, lhs, rhs, config.identity_tol, route.value, route.value
    )
    logger.debug("theorem %s at n=%g: residual %.2e", which.value, n, report.abs_residual)
    return report


def route_check(family: Family, n: float, config: Optional[VerifyConfig] = None) -> IdentityReport:
    """Series route against quadrature route for one quantity."""
    config = config or DEFAULT_CONFIG
    series = evaluate(family, n, Route.SERIES, config)
    quad = evaluate(family, n, Route.QUADRATURE, config)
    return IdentityReport.from_sides(
        f"{family.value}({n:g})", n, series, quad, config.route_rtol,
        Route.SERIES.value, Route.QUADRATURE.value,
    )


# =============================================================================
# G-function sums
# =============================================================================

def _g_component(layout: SumLayout, kernel: Kernel, z0: float, config: VerifyConfig) -> EvaluationResult:
    params = kernel_spec(kernel).params
    ledger = _Ledger()

    def g(z: float) -> EvaluationResult:
        return g_1331(
            params, z,
            spec=config.contour_spec(),
            residue_tol=config.residue_tol,
            max_terms=config.residue_max_terms,
            residue_max_w=config.residue_max_w,
        )

    asymptotic = small_argument_terms(params, TAIL_ORDER)

    if layout == SumLayout.ODD_ALTERNATING:
        def terms() -> Iterator[float]:
            r = 0
            while True:
                rho = 1 + 2 * r
                yield ledger.take((-1) ** r / rho, g(z0 / rho ** 4))
                r += 1
        summed = sum_series(terms(), config.summation_config(AccelerationKind.ALTERNATING))
        return ledger.close(summed)

    if layout == SumLayout.TRIPLE_COSH:
        def terms() -> Iterator[float]:
            k = 0
            while True:
                block = 0.0
                for m in range(3 * k + 1, 3 * k + 4):
                    c = diagonal_coefficient(m - 1)
                    if c:
                        block += ledger.take(c / m, g(z0 / m ** 4))
                yield block
                k += 1
        tail = [
            TailComponent(sign * a * z0 ** e, 1.0 + 4.0 * e, offset=h, stride=3)
            for h, sign in ((1, 1.0), (2, -1.0))
            for a, e in asymptotic
        ]
        summed = sum_series(terms(), config.summation_config(AccelerationKind.ZETA_TAIL), tail, consecutive=2)
        return ledger.close(summed)

    def terms() -> Iterator[float]:
        r = 0
        while True:
            rho = r + 1
            yield ledger.take(1.0 / rho ** 2, g(z0 / rho ** 4))
            r += 1
    tail = [TailComponent(a * z0 ** e, 2.0 + 4.0 * e) for a, e in asymptotic]
    summed = sum_series(terms(), config.summation_config(AccelerationKind.ZETA_TAIL), tail)
    return ledger.close(summed)


def eval_gsum(gsum: GSum, config: Optional[VerifyConfig] = None) -> EvaluationResult:
    """Constant plus the weighted G-sums of one identity side."""
    config = config or DEFAULT_CONFIG
    parts = [
        (comp.weight, _g_component(gsum.layout, comp.kernel, comp.z0, config))
        for comp in gsum.components
    ]
    return _combine(parts, constant=gsum.constant, method=Method.SERIES)


def g_argument_scale(layout: SumLayout) -> float:
    """z0 / n^2 for each layout: 64/pi^2, 36/pi^2 and 4/pi^2."""
    return {
        SumLayout.ODD_ALTERNATING: 64.0,
        SumLayout.TRIPLE_COSH: 36.0,
        SumLayout.BOSE: 4.0,
    }[layout] / math.pi ** 2


def identity_sides(identity: SummationIdentity, n: float) -> Tuple[GSum, GSum]:
    """
    Both sides of a printed summation identity at argument n.

    The first four are Theorems I and II (and their companions) multiplied
    by the family scale; the last two are Theorems III_star and III, which
    carry additive constants.
    """
    if not n > 0:
        raise DomainError(f"argument n must be positive, got {n}")
    identity = SummationIdentity(identity)
    recip = math.sqrt(2.0 / n)
    shifted = SQRT2 / (n * math.sqrt(n))

    def side(layout, comps, constant=0.0) -> GSum:
        scale = g_argument_scale(layout)
        return GSum(
            layout=layout,
            components=tuple(GComponent(w, k, scale * m * m) for w, k, m in comps),
            constant=constant,
        )

    odd, triple, bose = SumLayout.ODD_ALTERNATING, SumLayout.TRIPLE_COSH, SumLayout.BOSE
    if identity in (SummationIdentity.RG31, SummationIdentity.RG33):
        layout = odd if identity == SummationIdentity.RG31 else triple
        return (
            side(layout, [(1.0, Kernel.COS, n)]),
            side(layout, [(recip, Kernel.SIN, 1.0 / n), (1.0, Kernel.SIN, n)]),
        )
    if identity in (SummationIdentity.RG32, SummationIdentity.RG34):
        layout = odd if identity == SummationIdentity.RG32 else triple
        return (
            side(layout, [(1.0, Kernel.SIN, n)]),
            side(layout, [(recip, Kernel.COS, 1.0 / n), (-1.0, Kernel.COS, n)]),
        )
    if identity == SummationIdentity.RG35:
        return (
            side(bose, [(1.0, Kernel.XSIN, n)]),
            side(
                bose,
                [(shifted, Kernel.XCOS, 1.0 / n), (1.0, Kernel.XCOS, n)],
                constant=-math.pi ** 2 / (2.0 * n * SQRT2),
            ),
        )
    return (
        side(bose, [(1.0, Kernel.XCOS, n)]),
        side(
            bose,
            [(shifted, Kernel.XSIN, 1.0 / n), (-1.0, Kernel.XSIN, n)],
            constant=0.5 * math.pi ** 2 * (1.0 / math.sqrt(n) - 1.0 / (n * SQRT2)),
        ),
    )


def summation_identity_check(identity: SummationIdentity, n: float,
                             config: Optional[VerifyConfig] = None) -> IdentityReport:
    """Sum both sides of RG31..RG36 term by term through G^{1,3}_{3,1}."""
    config = config or DEFAULT_CONFIG
    identity = SummationIdentity(identity)
    lhs_sum, rhs_sum = identity_sides(identity, n)
    lhs = eval_gsum(lhs_sum, config)
    rhs = eval_gsum(rhs_sum, config)
    return IdentityReport.from_sides(
        identity.value, n, lhs, rhs, config.identity_tol, Route.SERIES.value, Route.SERIES.value
    )
