"""Exception hierarchy.

Data problems derive from :class:`ValidationError`, bad run settings from
:class:`ConfigError`. Both are ``ValueError`` so generic callers can catch
them the usual way.
"""


class FuncDepthError(Exception):
    """Base class for all package errors."""


class ValidationError(FuncDepthError, ValueError):
    """Input data violates an invariant."""


class MismatchedLengthError(ValidationError):
    pass


class NonFiniteError(ValidationError):
    pass


class TooFewCurvesError(ValidationError):
    pass


class BadGridError(ValidationError):
    pass


class BadIndicesError(ValidationError):
    pass


class GridMismatchError(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed curve file. ``row`` and ``col`` are 1-based when known."""

    def __init__(self, message, row=None, col=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if col is not None:
            where.append(f"column {col}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)
        self.row = row
        self.col = col


class ConfigError(FuncDepthError, ValueError):
    """Invalid parameters for a computation or run."""


class BadJError(ConfigError):
    pass


class BadMethodError(ConfigError):
    pass


class BadModelIdError(ConfigError):
    pass


class PartTooSmallError(ConfigError):
    pass


class NotFactorizableError(FuncDepthError, ArithmeticError):
    """Covariance could not be Cholesky-factorized even with maximal jitter."""
