"""
Complex gamma machinery.

log_gamma uses the 13-term rational Lanczos sum from cephes (scaled by
exp(g), g = 6.024680040776729583740234375). Arguments with re(z) < 1/2 are
reflected through Gamma(z) Gamma(1 - z) = pi / sin(pi z). All functions
accept scalars or numpy arrays and hold no state.
"""

import logging
import math
from typing import Union

import numpy as np

from .errors import DomainError, OverflowToInfinity, PoleAtNonPositiveInteger


logger = logging.getLogger(__name__)

ComplexLike = Union[complex, float, np.ndarray]

POLE_TOL = 1e-14

LANCZOS_G = 6.024680040776729583740234375

# Coefficients in decreasing powers of z
_LANCZOS_NUM = np.array([
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
])

# z (z + 1) ... (z + 11) expanded
_LANCZOS_DEN = np.array([
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
])

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)


def _check_poles(z: np.ndarray, tol: float) -> None:
    nearest = np.round(z.real)
    hit = (nearest <= 0) & (np.abs(z.real - nearest) <= tol) & (np.abs(z.imag) <= tol)
    if np.any(hit):
        bad = z[hit] if z.ndim else z
        raise PoleAtNonPositiveInteger(f"Gamma has a pole at {np.ravel(bad)[0]}")


def _lanczos_log_gamma(w: np.ndarray) -> np.ndarray:
    """log Gamma(w) for re(w) >= 1/2."""
    s = np.polyval(_LANCZOS_NUM, w) / np.polyval(_LANCZOS_DEN, w)
    return np.log(s) + (w - 0.5) * (np.log(w + LANCZOS_G - 0.5) - 1.0)


# Beyond this |im z| sin(pi z) is evaluated in log space; np.sin overflows near 225
LOG_SPACE_IMAG = 10.0


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    # Exact reduction of the real part keeps sin(pi z) accurate for large re(z)
    n = np.round(z.real)
    x = z.real - n
    y = z.imag
    odd = np.mod(n, 2.0) != 0.0
    direct = np.abs(y) < LOG_SPACE_IMAG
    out = np.empty(z.shape, dtype=complex)

    r = x[direct] + 1j * y[direct]
    out[direct] = np.log(np.where(odd[direct], -1.0, 1.0) * np.sin(np.pi * r))

    # sin(pi r) = (s i / 2) e^{-s i pi r} (1 - e^{2 s i pi r}) with s = sign(im r)
    far = ~direct
    s = np.sign(y[far])
    r = x[far] + 1j * y[far]
    log_far = (
        np.pi * np.abs(y[far]) - math.log(2.0)
        + 1j * s * (0.5 * np.pi - np.pi * x[far])
        + np.log1p(-np.exp(2j * np.pi * s * r))
        + np.where(odd[far], 1j * np.pi, 0.0)
    )
    # Same branch as np.log on the direct path
    log_far.imag = log_far.imag - 2.0 * np.pi * np.round(log_far.imag / (2.0 * np.pi))
    out[far] = log_far
    return out


def log_gamma(z: ComplexLike, pole_tol: float = POLE_TOL) -> ComplexLike:
    """
    Principal-branch log Gamma(z).

    Args:
        z: complex scalar or array
        pole_tol: distance to 0, -1, -2, ... treated as a pole

    Returns:
        complex scalar for scalar input, complex array otherwise

    Raises:
        PoleAtNonPositiveInteger: z within pole_tol of a non-positive integer
    """
    z_arr = np.asarray(z, dtype=complex)
    _check_poles(z_arr, pole_tol)

    flat = np.atleast_1d(z_arr)
    reflect = flat.real < 0.5
    w = np.where(reflect, 1.0 - flat, flat)
    out = _lanczos_log_gamma(w)
    if np.any(reflect):
        out[reflect] = LOG_PI - _log_sin_pi(flat[reflect]) - out[reflect]

    if z_arr.ndim == 0:
        return complex(out[0])
    return out.reshape(z_arr.shape)


def gamma(z: ComplexLike) -> ComplexLike:
    """Gamma(z) as exp(log_gamma(z))."""
    return np.exp(log_gamma(z))


def real_gamma(x: float) -> float:
    """Gamma at a real argument, sign included."""
    return float(np.real(gamma(complex(x))))


def pochhammer(a: float, k: int) -> float:
    """
    Rising factorial (a)_k = a (a + 1) ... (a + k - 1), with (a)_0 = 1.

    Raises:
        DomainError: negative k
        OverflowToInfinity: the running product leaves the float range
    """
    if k < 0:
        raise DomainError(f"Pochhammer index must be non-negative, got {k}")
    value = 1.0
    for j in range(k):
        value *= a + j
        if not math.isfinite(value):
            raise OverflowToInfinity(f"({a})_{k} overflows at factor {j + 1}")
    return value


def pochhammer_ratio_one_two(k: int) -> float:
    """(1)_k / (2)_k, which telescopes to 1/(k + 1)."""
    if k < 0:
        raise DomainError(f"Pochhammer index must be non-negative, got {k}")
    return 1.0 / (k + 1)


def multiplication_rhs(z: complex, m: int) -> complex:
    """
    Right side of the Gauss multiplication formula.

    (2 pi)^((1 - m)/2) m^(m z - 1/2) prod_{j=1..m} Gamma(z + (j - 1)/m),
    which equals Gamma(m z).
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError(f"multiplicity m must be a positive integer, got {m}")
    z = complex(z)
    shifts = z + np.arange(m) / m
    log_value = (
        0.5 * (1 - m) * LOG_2PI
        + (m * z - 0.5) * math.log(m)
        + np.sum(log_gamma(shifts))
    )
    return complex(np.exp(log_value))


def laplace_power_check(z: float, S: float) -> float:
    """Gamma(z) / S**z, the Laplace transform of t**(z - 1) at S."""
    if not z > 0:
        raise DomainError(f"exponent z must be positive, got {z}")
    if not S > 0:
        raise DomainError(f"transform variable S must be positive, got {S}")
    return math.exp(log_gamma(complex(z)).real - z * math.log(S))
