"""
Exception types shared by the library and the tool layer
"""
from typing import Optional


class LevymartError(Exception):
    """Base class; `kind` is what the tool layer reports as `error_kind`."""
    kind = "error"


class ValidationError(LevymartError, ValueError):
    kind = "validation"


class MomentError(ValidationError):
    """A measure moment needed by the operation is infinite."""

    def __init__(self, order: int, message: Optional[str] = None):
        self.order = order
        super().__init__(message or f"moment of order {order} is infinite (tail integral diverges)")


class DomainError(ValidationError):
    """Exponential rate outside the exponential-moment domain."""

    def __init__(self, rate: float, domain=None):
        self.rate = rate
        self.domain = domain
        where = f" {domain}" if domain is not None else ""
        super().__init__(f"rate {rate!r} lies outside the exponential-moment domain{where}")


class ConvergenceError(LevymartError, ArithmeticError):
    kind = "convergence"

    def __init__(self, message: str, achieved: Optional[float] = None, non_finite: bool = False):
        self.achieved = achieved
        self.non_finite = non_finite
        if achieved is not None:
            message = f"{message} (achieved error estimate {achieved:.3e})"
        super().__init__(message)


class UnsupportedSamplerError(LevymartError):
    kind = "unsupported"


class SamplingError(LevymartError):
    kind = "sampling"

    def __init__(self, offending: int, total: int):
        self.offending = offending
        self.total = total
        super().__init__(f"{offending} of {total} Monte Carlo draws are not finite")
