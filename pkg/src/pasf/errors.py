"""Exception types shared across the package."""


class PasfError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(PasfError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateDesignError(PasfError):
    """Requested separation frequency admits no stable realization."""


class OutOfBandError(PasfError):
    """Separation frequency maps beyond the lifted Nyquist band."""


class DesignFailureError(PasfError):
    """Iterative design did not converge; carries the final ripple."""

    def __init__(self, message: str, ripple: float | None = None):
        super().__init__(message)
        self.ripple = ripple


class UnsupportedReconfigurationError(PasfError):
    """Reconfiguration would change the filter structure (period or order)."""


class PoisonedStateError(PasfError):
    """Filter received NaN/Inf and refuses to step until reset."""


class SingularInnovationError(PasfError):
    """Innovation covariance is singular beyond the working precision."""


class SingularResponseError(PasfError):
    """Frequency response denominator vanished (unstable or marginal design)."""
