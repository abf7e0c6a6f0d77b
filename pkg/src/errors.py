"""
Error types raised by the verification engine.

Every error derives from RamanujanVerifyError so the CLI can map the whole
family onto exit codes in one place.
"""

from typing import Optional


class RamanujanVerifyError(Exception):
    """Base class for all engine errors."""
    pass


class DomainError(RamanujanVerifyError):
    """An argument lies outside the domain of the requested operation."""
    pass


class PoleAtNonPositiveInteger(DomainError):
    """Gamma evaluated at (or within tolerance of) 0, -1, -2, ..."""
    pass


class ZeroArgument(DomainError):
    """G-function requested at z = 0."""
    pass


class InvalidParameters(RamanujanVerifyError):
    """G-function parameter block violates its pole-separation conditions."""
    pass


class CoincidentPoles(InvalidParameters):
    """Residue route needs simple poles but two pole families coincide."""
    pass


class OverflowToInfinity(RamanujanVerifyError):
    """A running product left the floating point range."""
    pass


class NonFiniteResult(RamanujanVerifyError):
    """A computation produced NaN or infinity where a finite number was required."""
    pass


class MethodDisagreement(RamanujanVerifyError):
    """Two independent evaluation routes disagree beyond their estimates."""

    def __init__(self, message: str, first: float, second: float, bound: float):
        super().__init__(message)
        self.first = first
        self.second = second
        self.bound = bound


class ToleranceNotReached(RamanujanVerifyError):
    """An iterative computation hit its work cap before the tolerance."""

    def __init__(self, message: str, best_value: Optional[float] = None,
                 abs_err_est: Optional[float] = None):
        super().__init__(message)
        self.best_value = best_value
        self.abs_err_est = abs_err_est


class ConfigurationError(RamanujanVerifyError):
    """Configuration file or override could not be applied."""
    pass


class CancellationWarning(UserWarning):
    """Series partial sums grew far beyond the final result."""
    pass


class AccuracyWarning(UserWarning):
    """A result was accepted with a weaker error estimate than requested."""
    pass
