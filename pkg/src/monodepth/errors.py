"""Exception hierarchy shared by every module."""


class MonodepthError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatchError(MonodepthError, ValueError):
    """Two objects live over different variable contexts."""


class PreconditionError(MonodepthError, ValueError):
    """An operation was called outside the domain where it is defined."""


class ResourceError(MonodepthError):
    """A configured resource cap was exceeded."""

    def __init__(self, what: str, cap: int, needed: int | None = None):
        self.what = what
        self.cap = cap
        self.needed = needed
        msg = f"{what} exceeds cap {cap}"
        if needed is not None:
            msg += f" (needed at least {needed})"
        super().__init__(msg)


class ParseError(MonodepthError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
