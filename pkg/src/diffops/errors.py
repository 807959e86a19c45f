"""Exception hierarchy shared by all modules."""


class DiffopsError(Exception):
    """Base class for every error raised by diffops."""


class PreconditionError(DiffopsError, ValueError):
    """An input violates the documented precondition of an operation."""


class DegenerateInputError(PreconditionError):
    """Both/either inputs are zero where a nonzero element is required."""


class NonInvertibleError(PreconditionError, ZeroDivisionError):
    """Division by zero or by a non-invertible element."""


class ValueMismatchError(PreconditionError):
    """Two fractions that were required to be equal are not."""


class MinimalityUnavailableError(PreconditionError):
    """An lcm was requested for non-regular inputs; minimality cannot be certified."""


class SearchFailure(DiffopsError):
    """A verified-search procedure exhausted its candidate budget."""


class InternalInconsistency(DiffopsError, AssertionError):
    """A self-check failed. This always indicates a bug."""


class ParseError(DiffopsError, ValueError):
    """Malformed operator or matrix text."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
