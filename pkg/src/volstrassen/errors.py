"""Exception hierarchy shared by all volstrassen modules."""


class VolStrassenError(Exception):
    """Base class for library errors."""


class FieldMismatch(VolStrassenError, TypeError):
    """Two scalars (or containers of scalars) live in different fields."""


class DivisionByZero(VolStrassenError, ZeroDivisionError):
    pass


class ParseError(VolStrassenError, ValueError):
    pass


class InvalidParams(VolStrassenError, ValueError):
    """Generator parameters violate the hypothesis or the noncolinearity condition.

    ``report`` carries the full validation report when available.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InvalidIndex(VolStrassenError, ValueError):
    pass


class DegenerateBasis(VolStrassenError, ValueError):
    pass


class BadCalibration(VolStrassenError, ValueError):
    pass


class DimensionMismatch(VolStrassenError, ValueError):
    pass


class UnverifiedAlgorithm(VolStrassenError, ValueError):
    pass
