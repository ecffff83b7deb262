"""Exception hierarchy shared by every module of the package."""


class McKayError(Exception):
    """Base class for all errors raised by mckay_dt."""


class LabelError(McKayError, ValueError):
    """An ADE label string or (family, rank) pair is not valid."""


class DimensionError(McKayError, ValueError):
    """A vector does not have the length required by its graph or context."""


class NonGenericError(McKayError, ValueError):
    """A stability parameter (or a path of them) lies on a wall.

    ``root`` holds the offending root vector when one is known.
    """

    def __init__(self, message, root=None):
        super().__init__(message)
        self.root = root


class ImaginaryWallError(McKayError, ValueError):
    """The real-root wall-crossing factor was requested for the imaginary wall."""


class SeriesError(McKayError, ValueError):
    """Base class for truncated power series errors."""


class ContextMismatchError(SeriesError):
    pass


class NegativeExponentError(SeriesError):
    pass


class SubstitutionDomainError(SeriesError):
    """A substitution produced a monomial with a negative exponent."""


class TruncationError(SeriesError, KeyError):
    """A coefficient beyond the truncation order was requested."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ConstantTermError(SeriesError):
    """log/exp were given a series with the wrong constant term."""
