class HSError(Exception):
    """Base class for errors raised by hsideals."""


class DimensionError(HSError, ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class InvalidArgumentError(HSError, ValueError):
    pass


class ParseError(HSError, ValueError):
    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class ResourceLimitError(HSError, RuntimeError):
    """A configured size bound was exceeded; the computation was abandoned."""
