"""
Meijer G-function G^{1,3}_{3,1}(z | a1, a2, a3; b1) on the positive real axis.

Two independent routes:

- contour: the Mellin-Barnes integral
  (1/2 pi i) int Gamma(b1 - s) prod_k Gamma(1 - a_k + s) z^s ds along
  re(s) = xi inside the pole-separation strip. For real z the integrand at
  xi - i eta is the conjugate of the one at xi + i eta, so only eta >= 0 is
  integrated for the value.
- residue-series: after the flip to G^{3,1}_{1,3}(1/z | 1 - b1; 1 - a_k),
  the sum of residues at the three simple pole families, each a 1F2-type
  power series in w = 1/z, convergent for every w.

Auto-selection uses the residue series for w <= 4 and the contour
otherwise.
"""

import logging
import math
import warnings
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    CancellationWarning,
    CoincidentPoles,
    DomainError,
    InvalidParameters,
    MethodDisagreement,
    ToleranceNotReached,
    ZeroArgument,
)
from .gamma_core import log_gamma, real_gamma
from .models import ContourSpec, EvaluationResult, FlippedParams3113, GParams131, Method
from .quadrature import gauss_legendre


logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
RESIDUE_MAX_W = 4.0
CANCELLATION_RATIO = 1e8
MAX_TRUNCATION = 80.0


# =============================================================================
# Order flip and residue series
# =============================================================================

def flip_to_3113(params: GParams131) -> FlippedParams3113:
    """G^{1,3}_{3,1}(z | a; b1) = G^{3,1}_{1,3}(1/z | 1 - b1; 1 - a)."""
    return FlippedParams3113(
        upper=1.0 - params.b1,
        lower=tuple(1.0 - a for a in params.upper),
    )


def _check_simple_poles(lower: Sequence[float], tol: float = 1e-12) -> None:
    for i in range(len(lower)):
        for j in range(i + 1, len(lower)):
            gap = lower[i] - lower[j]
            if abs(gap - round(gap)) <= tol:
                raise CoincidentPoles(
                    f"lower parameters {lower[i]:g} and {lower[j]:g} differ by an integer"
                )


def _right_pole_series(
    b_main: Sequence[float],
    b_rest: Sequence[float],
    a_main: Sequence[float],
    u: float,
    tol: float,
    max_terms: int,
) -> Tuple[float, float, int, float]:
    """
    Residues of G^{m,n}_{p,q}(u) at s = b_k + i for the b_k in b_main.

    Each family k contributes
        sum_i (-1)^i/i! prod_{l != k} Gamma(b_l - b_k - i) prod_j Gamma(1 - a_j + b_k + i)
              / prod_rest Gamma(1 - b_r + b_k + i) * u^(b_k + i).

    Returns:
        (value, error estimate, total terms, largest |partial| seen)
    """
    value = 0.0
    err = 0.0
    total_terms = 0
    biggest = 0.0
    for k, bk in enumerate(b_main):
        others = [bl for l, bl in enumerate(b_main) if l != k]
        lead = 1.0
        for bl in others:
            lead *= real_gamma(bl - bk)
        for aj in a_main:
            lead *= real_gamma(1.0 - aj + bk)
        for br in b_rest:
            lead /= real_gamma(1.0 - br + bk)
        lead *= u ** bk
        if lead == 0.0:
            continue

        term = lead
        partial = lead
        peak = abs(lead)
        small = 0
        i = 0
        while small < 3:
            ratio = -u / (i + 1)
            for bl in others:
                ratio /= bl - bk - i - 1
            for aj in a_main:
                ratio *= 1.0 - aj + bk + i
            for br in b_rest:
                ratio /= 1.0 - br + bk + i
            term *= ratio
            partial += term
            i += 1
            peak = max(peak, abs(partial))
            small = small + 1 if abs(term) <= tol * abs(partial) else 0
            if i >= max_terms:
                raise ToleranceNotReached(
                    f"residue family {k} not converged after {max_terms} terms at u={u:g}",
                    best_value=value + partial,
                    abs_err_est=abs(term),
                )
        value += partial
        err += 3.0 * abs(term) + 4.0 * EPS * math.sqrt(i + 1) * peak
        total_terms += i + 1
        biggest = max(biggest, peak)
    return value, err, total_terms, biggest


def residue_series_3113(
    flipped: FlippedParams3113, w: float, tol: float = 1e-16, max_terms: int = 400
) -> EvaluationResult:
    """
    G^{3,1}_{1,3}(w | c; d1, d2, d3) as the sum of its three 1F2 residue families.

    Raises:
        CoincidentPoles: two d's differ by an integer
        DomainError: w < 0, or w = 0 with a negative pole exponent
        ToleranceNotReached: a family needs more than max_terms terms
    """
    lower = tuple(flipped.lower)
    _check_simple_poles(lower)
    if w < 0 or not math.isfinite(w):
        raise DomainError(f"w must be a non-negative real, got {w}")
    if w == 0.0:
        if min(lower) < 0:
            raise DomainError("w -> 0 limit diverges: a pole exponent is negative")
        # Only a family with d_k = 0 survives; all zero when every d_k > 0
        value, _, _, _ = _right_pole_series(lower, (), (flipped.upper,), 0.0, tol, max_terms)
        return EvaluationResult(value=value, abs_err_est=0.0, method=Method.LIMIT)

    value, err, terms, biggest = _right_pole_series(
        lower, (), (flipped.upper,), w, tol, max_terms
    )
    if biggest > CANCELLATION_RATIO * abs(value):
        warnings.warn(
            f"residue series at w={w:g}: partial sums reach {biggest:.2e} for a result of {value:.2e}",
            CancellationWarning,
            stacklevel=2,
        )
    return EvaluationResult(
        value=value, abs_err_est=err, method=Method.RESIDUE_SERIES, work={"terms": terms}
    )


def small_argument_terms(params: GParams131, count: int) -> List[Tuple[float, float]]:
    """
    Asymptotic expansion G^{1,3}_{3,1}(z) ~ sum_j A_j z^(b1 + j) as z -> 0+.

    A_j = (-1)^j / j! prod_k Gamma(1 - a_k + b1 + j), the residues at the
    right poles s = b1 + j. The series diverges; it is used only as a tail
    model at small z.

    Returns:
        list of (A_j, b1 + j)
    """
    b1 = params.b1
    coeff = 1.0
    for a in params.upper:
        coeff *= real_gamma(1.0 - a + b1)
    terms = [(coeff, b1)]
    for j in range(count - 1):
        coeff *= -1.0 / (j + 1)
        for a in params.upper:
            coeff *= 1.0 - a + b1 + j
        terms.append((coeff, b1 + j + 1))
    return terms


# =============================================================================
# Contour route
# =============================================================================

def _log_integrand(params: GParams131, log_z: float, s: np.ndarray) -> np.ndarray:
    total = log_gamma(params.b1 - s)
    for a in params.upper:
        total = total + log_gamma(1.0 - a + s)
    return total + s * log_z


def _composite(params: GParams131, log_z: float, xi: float, height: float,
               width: float, nodes: int, sign: float = 1.0) -> Tuple[complex, float, int]:
    """Composite Gauss-Legendre over eta in [0, height]; returns (integral, int |f|, panels)."""
    panels = max(1, int(math.ceil(height / width)))
    edges = np.linspace(0.0, height, panels + 1)
    t, wts = gauss_legendre(nodes)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    eta = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    f = np.exp(_log_integrand(params, log_z, xi + 1j * sign * eta)).reshape(panels, nodes)
    weights = half[:, None] * wts[None, :]
    return complex(np.sum(f * weights)), float(np.sum(np.abs(f) * weights)), panels


def _truncation_height(params: GParams131, log_z: float, xi: float, tol: float) -> Tuple[float, float]:
    peak = float(np.abs(np.exp(_log_integrand(params, log_z, np.array([xi + 0j]))))[0])
    height = 1.0
    while True:
        edge = float(np.abs(np.exp(_log_integrand(params, log_z, np.array([xi + 1j * height])))[0]))
        if edge <= tol * peak / (10.0 * height):
            return height, edge
        height += 1.0
        if height > MAX_TRUNCATION:
            raise ToleranceNotReached(
                f"contour integrand still {edge:.2e} at eta={MAX_TRUNCATION:g}"
            )


def contour_integral(params: GParams131, z: float, spec: Optional[ContourSpec] = None) -> EvaluationResult:
    """
    Mellin-Barnes route.

    The panel width follows the distance d from the line to the nearest pole:
    a grid of width min(1, 2d) and one of half that width are both evaluated,
    the finer one supplies the value and their difference the estimate.
    """
    spec = spec or ContourSpec()
    lo, hi = params.strip
    xi = params.midpoint if spec.xi is None else spec.xi
    if not lo < xi < hi:
        raise InvalidParameters(f"abscissa {xi:g} outside the pole-separation strip ({lo:g}, {hi:g})")
    log_z = math.log(z)

    if spec.tmax is None:
        height, edge = _truncation_height(params, log_z, xi, spec.tol)
    else:
        height = spec.tmax
        edge = float(np.abs(np.exp(_log_integrand(params, log_z, np.array([xi + 1j * height])))[0]))

    d = min(xi - lo, hi - xi)
    coarse_width = min(1.0, 2.0 * d)
    coarse, _, n_coarse = _composite(params, log_z, xi, height, coarse_width, spec.nodes)
    fine, mass, n_fine = _composite(params, log_z, xi, height, 0.5 * coarse_width, spec.nodes)
    lower_half, _, _ = _composite(params, log_z, xi, height, coarse_width, spec.nodes, sign=-1.0)

    value = fine.real / math.pi
    imag_residue = abs(coarse.imag + lower_half.imag) / (2.0 * math.pi)
    err = (
        abs(fine.real - coarse.real) / math.pi
        + edge / math.pi
        + 64.0 * EPS * mass / math.pi
    )
    if imag_residue > 1e-10 * (1.0 + abs(value)):
        logger.warning("contour imaginary residue %.2e at z=%g", imag_residue, z)

    logger.debug("contour z=%g xi=%g T=%g panels=%d value=%.15g", z, xi, height, n_fine, value)
    return EvaluationResult(
        value=value,
        abs_err_est=err,
        method=Method.CONTOUR,
        work={"panels": n_coarse * 2 + n_fine, "evaluations": (n_coarse * 2 + n_fine) * spec.nodes},
    )


# =============================================================================
# Public evaluator
# =============================================================================

def check_convergence_region(params: GParams131, z: float) -> None:
    """|arg z| < lambda*pi holds on the positive axis; boundary cases are never reached."""
    if not abs(math.atan2(0.0, z)) < params.lam * math.pi:
        raise DomainError(f"z={z:g} outside the convergence sector")


def g_1331(
    params: GParams131,
    z: float,
    method: Optional[Method] = None,
    spec: Optional[ContourSpec] = None,
    residue_tol: float = 1e-16,
    max_terms: int = 400,
    residue_max_w: float = RESIDUE_MAX_W,
    cross_check: bool = False,
) -> EvaluationResult:
    """
    G^{1,3}_{3,1}(z | a1, a2, a3; b1) for z > 0.

    Args:
        params: parameter block
        z: positive real argument
        method: Method.CONTOUR or Method.RESIDUE_SERIES; automatic when None
        spec: contour abscissa, truncation and tolerance
        residue_tol: relative stopping tolerance of the residue families
        max_terms: cap per residue family
        residue_max_w: largest w = 1/z handed to the residue series by default
        cross_check: evaluate both routes and compare them

    Raises:
        ZeroArgument: z == 0
        DomainError: z negative or not finite
        MethodDisagreement: cross_check and the routes differ by more than
            10x their combined estimates
    """
    if z == 0:
        raise ZeroArgument("G-function requires z != 0")
    if not z > 0 or not math.isfinite(z):
        raise DomainError(f"z must be a positive real, got {z}")
    check_convergence_region(params, z)

    w = 1.0 / z
    if method is None:
        method = Method.RESIDUE_SERIES if w <= residue_max_w else Method.CONTOUR
    if method not in (Method.RESIDUE_SERIES, Method.CONTOUR):
        raise DomainError(f"unsupported G-function method {method.value}")

    def residue() -> EvaluationResult:
        return residue_series_3113(flip_to_3113(params), w, residue_tol, max_terms)

    def contour() -> EvaluationResult:
        return contour_integral(params, z, spec)

    primary = residue() if method == Method.RESIDUE_SERIES else contour()
    if cross_check:
        other = contour() if method == Method.RESIDUE_SERIES else residue()
        bound = 10.0 * (primary.abs_err_est + other.abs_err_est)
        if abs(primary.value - other.value) > bound:
            raise MethodDisagreement(
                f"G({z:g}) routes differ: {primary.value:.15g} vs {other.value:.15g}",
                primary.value, other.value, bound,
            )
    return primary


# =============================================================================
# Elementary functions through G^{1,0}_{0,2}
# =============================================================================

SIN_COS_LIMIT = 50.0


def _g_1002(u: float, b_main: float, b_other: float) -> float:
    value, _, _, biggest = _right_pole_series((b_main,), (b_other,), (), u, 1e-17, 400)
    if biggest > CANCELLATION_RATIO * max(abs(value), EPS):
        warnings.warn(
            f"G^{{1,0}}_{{0,2}}({u:g}) cancels from {biggest:.2e}", CancellationWarning, stacklevel=3
        )
    return value


def _reduce(x: float) -> float:
    """x - 2 pi k in [-pi, pi]; keeps the G series away from cancellation."""
    if abs(x) >= SIN_COS_LIMIT:
        raise DomainError(f"|x| must be below {SIN_COS_LIMIT:g}, got {x}")
    return math.remainder(x, 2.0 * math.pi)


def sin_via_g(x: float) -> float:
    """
    sin x through sqrt(pi) G^{1,0}_{0,2}(x^2/4 | 1/2, 0), which equals sin|x|.

    The argument is reduced by whole periods first; the sign of the reduced
    argument makes the result odd.
    """
    r = _reduce(x)
    if r == 0:
        return 0.0
    return math.copysign(1.0, r) * math.sqrt(math.pi) * _g_1002(r * r / 4.0, 0.5, 0.0)


def cos_via_g(x: float) -> float:
    """cos x = sqrt(pi) G^{1,0}_{0,2}(x^2/4 | 0, 1/2), after reduction by whole periods."""
    r = _reduce(x)
    return math.sqrt(math.pi) * _g_1002(r * r / 4.0, 0.0, 0.5)
