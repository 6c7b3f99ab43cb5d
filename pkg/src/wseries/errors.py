"""Exception types shared by the library and the command line tool."""


class SeriesError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(SeriesError):
    """A mathematical precondition was violated (non-unit, flat order, ...)."""


class ExpressionError(SeriesError):
    """Expression text could not be parsed."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InternalInvariantError(SeriesError):
    """An invariant the algorithms guarantee failed; this signals a bug."""
