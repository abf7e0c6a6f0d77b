"""
Laplace transforms of the quadratic-phase kernels.

    int_0^inf e^{-alpha x} x^k trig(beta x^2) dx = prefactor(alpha) * G^{1,3}_{3,1}(64 beta^2 / alpha^4 | params)

with k in {0, 1} and trig in {sin, cos}. The G-function needs a non-zero
argument, so beta = 0 is answered from the analytic limit.
"""

import logging
import math
from typing import Dict, List, Optional, Tuple

from .config import DEFAULT_CONFIG, VerifyConfig
from .errors import DomainError
from .meijer_g import g_1331
from .models import (
    EvaluationResult,
    GParams131,
    Kernel,
    KernelSpec,
    LaplaceRequest,
    LaplaceRoute,
    Method,
    QuadratureConfig,
)
from .quadrature import integrate, laplace_integrand


logger = logging.getLogger(__name__)

# Relative to the beta = 0 magnitude 1/alpha^(k+1)
LAPLACE_QUAD_TOL = 1e-15

KERNELS: Dict[Kernel, KernelSpec] = {
    Kernel.SIN: KernelSpec(Kernel.SIN, 0, "sin", GParams131(a1=0.25, a2=0.5, a3=0.75, b1=0.5)),
    Kernel.COS: KernelSpec(Kernel.COS, 0, "cos", GParams131(a1=0.25, a2=0.75, a3=0.0, b1=0.0)),
    Kernel.XSIN: KernelSpec(Kernel.XSIN, 1, "sin", GParams131(a1=-0.25, a2=0.25, a3=0.5, b1=0.5)),
    Kernel.XCOS: KernelSpec(Kernel.XCOS, 1, "cos", GParams131(a1=-0.25, a2=0.25, a3=0.0, b1=0.0)),
}


def kernel_spec(kernel: Kernel) -> KernelSpec:
    try:
        return KERNELS[Kernel(kernel)]
    except (KeyError, ValueError) as e:
        raise DomainError(f"unknown Laplace kernel {kernel!r}") from e


def beta_zero_limit(kernel: Kernel, alpha: float) -> float:
    """Sin and XSin vanish; Cos gives 1/alpha and XCos 1/alpha^2."""
    spec = kernel_spec(kernel)
    if spec.trig == "sin":
        return 0.0
    return 1.0 / alpha ** (spec.power + 1)


def laplace_eval(
    req: LaplaceRequest,
    route: LaplaceRoute = LaplaceRoute.G_FUNCTION,
    config: Optional[VerifyConfig] = None,
) -> EvaluationResult:
    """
    Evaluate one kernel transform.

    Args:
        req: kernel, alpha > 0, beta >= 0
        route: G-function closed form or direct quadrature
        config: tolerances for the G-function and quadrature routes

    Returns:
        EvaluationResult; method is limit when beta == 0
    """
    config = config or DEFAULT_CONFIG
    spec = kernel_spec(req.kernel)
    alpha, beta = req.alpha, req.beta

    if beta == 0.0:
        return EvaluationResult(
            value=beta_zero_limit(req.kernel, alpha), abs_err_est=0.0, method=Method.LIMIT
        )

    if route == LaplaceRoute.QUADRATURE:
        scale = 1.0 / alpha ** (spec.power + 1)
        cfg = QuadratureConfig(tol=LAPLACE_QUAD_TOL * scale, max_panels=config.quad_max_panels)
        return integrate(laplace_integrand(req.kernel, alpha, beta), cfg)

    z = KernelSpec.g_argument(alpha, beta)
    g = g_1331(
        spec.params,
        z,
        spec=config.contour_spec(),
        residue_tol=config.residue_tol,
        max_terms=config.residue_max_terms,
        residue_max_w=config.residue_max_w,
    )
    factor = spec.prefactor(alpha)
    logger.debug("L[%s](%g, %g): G(%g) via %s", req.kernel.value, alpha, beta, z, g.method.value)
    return EvaluationResult(
        value=factor * g.value,
        abs_err_est=factor * g.abs_err_est,
        method=g.method,
        work=g.work,
    )


def laplace_asymptotic_terms(kernel: Kernel, beta: float, count: int) -> List[Tuple[float, int]]:
    """
    Large-alpha expansion of the transform as sum_j c_j alpha^(-p_j).

    Term-by-term Laplace transform of the Taylor series of trig(beta x^2):
        cos: c_j = (-1)^j beta^(2j) (4j + k)! / (2j)!,          p_j = 4j + k + 1
        sin: c_j = (-1)^j beta^(2j+1) (4j + 2 + k)! / (2j + 1)!,  p_j = 4j + k + 3
    The expansion diverges for fixed alpha; only its first terms are useful,
    and only when alpha^4 is large against beta^2.

    Returns:
        list of (c_j, p_j)
    """
    if beta < 0:
        raise DomainError(f"frequency beta must be non-negative, got {beta}")
    spec = kernel_spec(kernel)
    k = spec.power
    terms = []
    for j in range(count):
        if spec.trig == "cos":
            top, bottom, power = 4 * j + k, 2 * j, 2 * j
        else:
            top, bottom, power = 4 * j + 2 + k, 2 * j + 1, 2 * j + 1
        ratio = math.factorial(top) // math.factorial(bottom)
        terms.append(((-1) ** j * float(ratio) * beta ** power, top + 1))
    return terms
