"""Exception hierarchy shared by all modules."""


class ModCartanError(Exception):
    """Base class for all errors raised by modcartan."""


class FieldMismatchError(ModCartanError):
    """Objects defined over different prime fields were combined."""


class DimensionError(ModCartanError, ValueError):
    """Shapes or dimensions do not agree."""


class CapacityError(ModCartanError):
    """A construction would exceed the configured size cap."""


class PreconditionError(ModCartanError, ValueError):
    """An operation was called on input violating its documented precondition."""


class ValidationError(ModCartanError, ValueError):
    """A structure failed one of its defining identities."""
