"""Error types shared across the package.

Every failure mode surfaced to callers is one of the classes below, so the
command line tool can map exceptions to exit codes and messages uniformly.
"""


class ConvalgError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ConvalgError, ValueError):
    """An argument is structurally wrong (dimension mismatch, bad vector, ...)."""


class PreconditionError(InvalidInputError):
    """A documented precondition of an operation does not hold."""


class ParseError(InvalidInputError):
    """An instance file is malformed.  The message carries field context."""


class ResourceLimitError(ConvalgError):
    """A computation was refused because it exceeds a configured size bound."""


class PositivityError(ConvalgError):
    """An integrality or nonnegativity guarantee failed.

    This is never expected on correct input; it signals that the computation
    contradicts a guarantee the algebra is supposed to satisfy, so either the
    implementation or the claim being checked is wrong.
    """


class InternalCheckError(ConvalgError):
    """An internal consistency assertion failed (implementation bug)."""
