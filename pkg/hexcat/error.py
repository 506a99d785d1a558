__all__ = [
    "HexcatError",
    "InvalidDeclaration",
    "StructuralError",
    "BoundExceeded",
    "PreconditionError",
    "check_bound",
]


class HexcatError(Exception):
    """Base class for every error raised by hexcat."""

    message: str

    def __init__(self, message: str, *args: object):
        super().__init__(message, *args)
        self.message = message

    def format(self) -> str:
        return self.message

    def __str__(self) -> str:
        return self.message


class InvalidDeclaration(HexcatError):
    """Raised when a declaration can not be processed."""

    def __init__(self, message: str, line: int):
        super().__init__(message, line)
        self.line = line
        self.reason = message
        self.message = message + f" (line {line + 1})"


class StructuralError(HexcatError):
    """Raised when a category table is malformed."""


class BoundExceeded(HexcatError):
    """Raised when an enumeration would go past the configured bound."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(
            f"Enumerating {what} requires {size} candidates (bound is {bound}).",
            size,
            bound,
        )
        self.what = what
        self.size = size
        self.bound = bound


class PreconditionError(HexcatError):
    """Raised when an operation is called outside of its precondition."""


def check_bound(what: str, size: int, bound: int) -> int:
    """Raise if the size of an enumeration goes past the bound."""
    if size > bound:
        raise BoundExceeded(what, size, bound)
    return size
