"""Exception hierarchy.

Every error raised on bad input derives from :class:`ValidationError` so the
command line can map it to a single exit status.
"""


class PwcError(Exception):
    """Base class for all package errors."""


class ValidationError(PwcError, ValueError):
    """Input violates a documented precondition."""


class NonMonotonePartition(ValidationError):
    pass


class LambdaOutOfRange(ValidationError):
    pass


class PointOutOfDomain(ValidationError):
    pass


class EmptyItinerary(ValidationError):
    pass


class ModeMismatch(ValidationError):
    """Exact and float scalars were mixed in one computation."""


class FloatModeUnsupported(ValidationError):
    pass


class ParameterOutsideTriangle(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class IdenticallyZero(ValidationError):
    pass


class DegenerateFit(ValidationError):
    pass


class PrecisionLoss(PwcError, ArithmeticError):
    """A float-mode comparison came too close to a branch endpoint to decide."""


class BranchEscapesUnit(PwcError, AssertionError):
    """A constructed branch does not map into [0, 1); arithmetic bug."""


class BoundViolation(PwcError, AssertionError):
    """More certified cycles than the orbit-count bound allows; implementation bug."""
