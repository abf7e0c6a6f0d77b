"""
Data models for the Ramanujan integral verification engine.

Parameter blocks and requests are validated pydantic models; small
immutable value objects used in tight loops are dataclasses.
"""

from dataclasses import dataclass, asdict
from typing import Callable, Dict, List, Optional, Tuple, Union
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import DomainError, InvalidParameters, NonFiniteResult


# =============================================================================
# Tags
# =============================================================================

class Method(str, Enum):
    """How an EvaluationResult value was produced."""
    CONTOUR = "contour"
    RESIDUE_SERIES = "residue-series"
    LIMIT = "limit"
    QUADRATURE = "quadrature"
    SERIES = "series"


class Kernel(str, Enum):
    """Laplace kernel selector."""
    SIN = "Sin"
    COS = "Cos"
    XSIN = "XSin"
    XCOS = "XCos"


class LaplaceRoute(str, Enum):
    G_FUNCTION = "g_function"
    QUADRATURE = "quadrature"


class Family(str, Enum):
    """Ramanujan integral families."""
    PHI1 = "Phi1"
    PSI1 = "Psi1"
    PHI2 = "Phi2"
    PSI2 = "Psi2"
    PHI3 = "Phi3"
    PSI3_STAR = "Psi3Star"
    PSI3 = "Psi3"


class Route(str, Enum):
    SERIES = "series"
    QUADRATURE = "quadrature"


class Theorem(str, Enum):
    """Reciprocity theorems and their companion forms."""
    I = "I"
    II = "II"
    III = "III"
    III_STAR = "III_star"
    I_PRIME = "I_prime"
    II_PRIME = "II_prime"
    III_PRIME = "III_prime"


class SummationIdentity(str, Enum):
    """G-function summation identities."""
    RG31 = "RG31"
    RG32 = "RG32"
    RG33 = "RG33"
    RG34 = "RG34"
    RG35 = "RG35"
    RG36 = "RG36"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    FLAGGED = "flagged"


class AccelerationKind(str, Enum):
    """Sequence transformation applied by sum_series."""
    NONE = "none"
    ALTERNATING = "alternating"
    ZETA_TAIL = "zeta_tail"


class SumLayout(str, Enum):
    """Index pattern of a printed G-function sum."""
    ODD_ALTERNATING = "odd_alternating"   # (-1)^r / (1+2r) * G(z0 / (1+2r)^4)
    TRIPLE_COSH = "triple_cosh"           # c_m / m * G(z0 / m^4), c_m = +1, -1, 0 for m = 1, 2, 0 mod 3
    BOSE = "bose"                         # 1 / (r+1)^2 * G(z0 / (r+1)^4)


class PhaseKind(str, Enum):
    QUADRATIC = "quadratic"
    LINEAR = "linear"
    NONE = "none"


class DecayKind(str, Enum):
    EXP = "exp"
    EXP_SQRT = "exp_sqrt"


# =============================================================================
# G-function models
# =============================================================================

def _is_positive_integer(x: float, tol: float = 1e-12) -> bool:
    nearest = round(x)
    return nearest >= 1 and abs(x - nearest) <= tol


class GParams131(BaseModel):
    """Parameter block (a1, a2, a3; b1) of G^{1,3}_{3,1}."""
    model_config = ConfigDict(frozen=True)

    a1: float
    a2: float
    a3: float
    b1: float

    @model_validator(mode="after")
    def check_pole_separation(self):
        for a in self.upper:
            if _is_positive_integer(a - self.b1):
                raise InvalidParameters(
                    f"a_k - b1 = {a - self.b1:g} is a positive integer; left and right poles collide"
                )
        lo, hi = self.strip
        if not lo < hi:
            raise InvalidParameters(f"pole-separation strip ({lo:g}, {hi:g}) is empty")
        return self

    @property
    def upper(self) -> Tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    @property
    def lam(self) -> float:
        # m + n - (p + q)/2 with (m, n, p, q) = (1, 3, 3, 1)
        return 2.0

    @property
    def omega(self) -> float:
        return self.b1 - sum(self.upper)

    @property
    def strip(self) -> Tuple[float, float]:
        """Open interval of admissible contour abscissae."""
        return (max(a - 1.0 for a in self.upper), self.b1)

    @property
    def midpoint(self) -> float:
        lo, hi = self.strip
        return 0.5 * (lo + hi)


@dataclass(frozen=True)
class FlippedParams3113:
    """G^{3,1}_{1,3}(1/z | c; d1, d2, d3) obtained from a GParams131 block."""
    upper: float
    lower: Tuple[float, float, float]


class ContourSpec(BaseModel):
    """Vertical line and truncation for the Mellin-Barnes route.

    ``tol`` is measured against the integrand magnitude on the real axis,
    which is the scale of the rounding error of the integral.
    """
    xi: Optional[float] = None
    tmax: Optional[float] = None
    tol: float = Field(default=1e-15, gt=0.0)
    nodes: int = Field(default=20, ge=4)


class EvaluationResult(BaseModel):
    """Value with error estimate, method tag and work counters."""
    value: float
    abs_err_est: float = Field(ge=0.0)
    method: Method
    work: Dict[str, int] = Field(default_factory=dict)

    @field_validator("value", "abs_err_est", mode="before")
    @classmethod
    def finite(cls, v, info):
        # Runs ahead of the ge=0 constraint so NaN surfaces as an engine error
        if v is not None and not np.isfinite(v):
            raise NonFiniteResult(f"{info.field_name} is not finite: {v}")
        return v

    def summary(self) -> str:
        counters = ", ".join(f"{k}={v}" for k, v in sorted(self.work.items()))
        return f"{self.value:.15g} ± {self.abs_err_est:.2e} [{self.method.value}] {counters}".rstrip()


# =============================================================================
# Laplace kernels
# =============================================================================

class LaplaceRequest(BaseModel):
    """Laplace transform of one of the four quadratic-phase kernels."""
    kernel: Kernel
    alpha: float
    beta: float = 0.0

    @field_validator("alpha")
    @classmethod
    def alpha_positive(cls, v):
        if not v > 0 or not np.isfinite(v):
            raise DomainError(f"decay rate alpha must be positive and finite, got {v}")
        return v

    @field_validator("beta")
    @classmethod
    def beta_non_negative(cls, v):
        if not v >= 0 or not np.isfinite(v):
            raise DomainError(f"frequency beta must be non-negative and finite, got {v}")
        return v


@dataclass(frozen=True)
class KernelSpec:
    """Prefactor and G-function parameters of one Laplace kernel."""
    kernel: Kernel
    power: int          # x**power multiplies the trigonometric factor
    trig: str           # "sin" or "cos"
    params: GParams131

    def prefactor(self, alpha: float) -> float:
        if self.power == 0:
            return 1.0 / (alpha * np.pi * np.sqrt(2.0))
        return 2.0 * np.sqrt(2.0) / (alpha * alpha * np.pi)

    @staticmethod
    def g_argument(alpha: float, beta: float) -> float:
        return 64.0 * beta * beta / alpha ** 4


# =============================================================================
# Quadrature
# =============================================================================

@dataclass(frozen=True)
class OscillatoryIntegrand:
    """Integrand on [0, inf) with descriptors used only for panel placement.

    Zeros of the oscillatory factor sit where omega * x**p = (k + phase_offset) * pi,
    p = 2 for quadratic and 1 for linear phase. The decay envelope is
    envelope_scale * x**envelope_power * exp(-rate * x) (or exp(-rate * sqrt(x))).
    """
    f: Callable[[np.ndarray], np.ndarray]
    phase: PhaseKind = PhaseKind.NONE
    omega: float = 0.0
    phase_offset: float = 0.0
    decay: DecayKind = DecayKind.EXP
    rate: float = 1.0
    envelope_scale: float = 1.0
    envelope_power: int = 0
    singular_at_origin: bool = False
    label: str = ""


class QuadratureConfig(BaseModel):
    tol: float = Field(default=1e-12, gt=0.0)
    max_panels: int = Field(default=200_000, ge=1)
    max_panel_width: float = Field(default=0.5, gt=0.0)
    extrapolate: bool = False


# =============================================================================
# Series
# =============================================================================

@dataclass(frozen=True)
class ExpansionTerm:
    """One exponential term coefficient * exp(-rate * x) of a kernel expansion."""
    index: Tuple[int, ...]
    coefficient: Union[int, float]
    rate: float

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class TailComponent:
    """Asymptotic model term coefficient * (stride * k + offset) ** (-exponent)."""
    coefficient: float
    exponent: float
    offset: float = 1.0
    stride: float = 1.0

    def at(self, k: int) -> float:
        return self.coefficient * (self.stride * k + self.offset) ** (-self.exponent)


class SummationConfig(BaseModel):
    tol: float = Field(default=1e-12, gt=0.0)
    max_terms: int = Field(default=400, ge=1)
    min_terms: int = Field(default=8, ge=3)
    acceleration: AccelerationKind = AccelerationKind.NONE


# =============================================================================
# Ramanujan quantities and reports
# =============================================================================

class RamanujanQuantity(BaseModel):
    family: Family
    arg: float

    @field_validator("arg")
    @classmethod
    def arg_positive(cls, v):
        if not v > 0 or not np.isfinite(v):
            raise DomainError(f"argument n must be a positive real, got {v}")
        return v


class IdentityReport(BaseModel):
    """Both sides of an identity with residuals and provenance."""
    identity: str
    n: float
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    tolerance: float
    passed: bool
    method_lhs: str
    method_rhs: str
    terms: int = 0
    panels: int = 0

    @classmethod
    def from_sides(cls, identity: str, n: float, lhs: EvaluationResult,
                   rhs: EvaluationResult, tolerance: float,
                   method_lhs: str, method_rhs: str) -> "IdentityReport":
        abs_res = abs(lhs.value - rhs.value)
        scale = max(1.0, abs(lhs.value), abs(rhs.value))
        work = [lhs.work, rhs.work]
        return cls(
            identity=identity,
            n=n,
            lhs=lhs.value,
            rhs=rhs.value,
            abs_residual=abs_res,
            rel_residual=abs_res / max(abs(lhs.value), abs(rhs.value), 1e-300),
            tolerance=tolerance,
            passed=abs_res <= tolerance * scale,
            method_lhs=method_lhs,
            method_rhs=method_rhs,
            terms=sum(w.get("terms", 0) for w in work),
            panels=sum(w.get("panels", 0) for w in work),
        )


class ClosedFormEntry(BaseModel):
    """A printed closed form set against the engine's computed values."""
    id: str
    quantity: str
    expression: str
    printed_decimal: str
    printed_value: float
    computed_value: float
    oracle_value: float
    method_computed: str
    method_oracle: str
    abs_discrepancy: float
    rel_discrepancy: float
    routes_agree: bool
    flagged: bool
    status: Status
    terms: int = 0
    panels: int = 0


class ReportItem(BaseModel):
    """One row of a RunReport, the shape written to JSON/CSV/Markdown."""
    id: str
    suite: str
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    status: Status
    method_lhs: str
    method_rhs: str
    terms: int = 0
    panels: int = 0
    time_ms: float = 0.0
    detail: Optional[str] = None


class RunSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    flagged: int = 0


class RunReport(BaseModel):
    schema_version: str
    tool_version: str
    suite: str
    config: Dict[str, Union[float, int, str]]
    items: List[ReportItem]
    summary: RunSummary
    timing: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def summary_matches_items(self):
        tally = RunSummary(
            total=len(self.items),
            passed=sum(i.status == Status.PASS for i in self.items),
            failed=sum(i.status == Status.FAIL for i in self.items),
            flagged=sum(i.status == Status.FLAGGED for i in self.items),
        )
        if tally != self.summary:
            raise ValueError(f"summary {self.summary} does not match item tallies {tally}")
        return self


# =============================================================================
# G-function sums
# =============================================================================

@dataclass(frozen=True)
class GComponent:
    """weight * sum over the layout of G_kernel(z0 / rho^4)."""
    weight: float
    kernel: Kernel
    z0: float


@dataclass(frozen=True)
class GSum:
    """One side of a summation identity: a constant plus weighted G-sums sharing a layout."""
    layout: SumLayout
    components: Tuple[GComponent, ...]
    constant: float = 0.0
