"""Exception types shared across the package."""


class SobeigError(Exception):
    """Base class for all package-specific errors."""


class ParamOutOfRange(SobeigError):
    """A family or inner-product parameter violates its admissible range."""

    def __init__(self, field, value, requirement):
        self.field = field
        self.value = value
        self.requirement = requirement
        super().__init__(f"{field}={value!r}: {requirement}")


class RoutingMismatch(SobeigError):
    """An operation for one parity routing was called on the other."""


class MagnitudeOverflow(SobeigError):
    """Predicted sequence magnitude exceeds the binary64 guard bound."""


class ConvergenceFailure(SobeigError):
    """The tridiagonal eigensolver exceeded its sweep budget."""


class UnsupportedCase(SobeigError):
    """Exact rational oracle asked for a configuration outside its case set."""


class InsufficientSamples(SobeigError):
    """Sequence acceleration needs at least three geometric samples."""


class DegenerateIndex(SobeigError):
    """A ratio series was requested at a mapped index below 1."""
