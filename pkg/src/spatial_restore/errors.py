"""Exception hierarchy shared by every module.

All errors derive from ``ValueError`` so callers that only care about
"bad input" can catch one thing; the CLI maps each subclass to an exit code.
"""


class RestoreError(ValueError):
    """Base class for all package errors."""


class ParameterError(RestoreError):
    """A parameter violates its precondition (negative sigma, even window, ...)."""


class ShapeError(RestoreError):
    """Image dimensions are invalid or two images do not match."""


class RangeError(RestoreError):
    """A pixel lies outside [0, 1] where the operation requires it."""


class PgmParseError(RestoreError):
    """A PGM byte stream could not be decoded.

    ``offset`` is the byte position at which decoding failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
