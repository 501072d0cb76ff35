"""Exception hierarchy shared across the package."""


class MvdmmError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(MvdmmError):
    """Operands belong to different field specs."""


class RangeError(MvdmmError):
    """An index or exponent is outside its admissible range."""


class ParameterError(MvdmmError):
    """Construction or operation parameters violate a precondition."""


class CapacityError(MvdmmError):
    """An enumeration would exceed the configured size limit."""


class InfeasibleError(MvdmmError):
    """No object with the requested parameters exists."""


class ShapeError(MvdmmError):
    """Matrix dimensions are incompatible."""


class InsufficientResponsesError(MvdmmError):
    """Fewer worker responses than the recovery threshold requires."""

    def __init__(self, needed: int, got: int):
        self.needed = needed
        self.got = got
        super().__init__(f"need {needed} distinct responses, got {got} (deficit {needed - got})")


class IncompleteRecoveryError(MvdmmError):
    """A required coefficient is missing from a recovered map."""


class InternalConsistencyError(MvdmmError):
    """A mathematically guaranteed property failed; indicates a bug."""
