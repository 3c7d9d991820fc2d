"""Exception hierarchy shared by every spinbfv module."""
from typing import Optional, Sequence


class SpinBFVError(Exception):
    """Base class for all errors raised by the library."""


class DomainError(SpinBFVError, ValueError):
    """Input outside the domain of an operation (bad exponent, bad f, table mismatch)."""


class UnsupportedBackgroundError(DomainError):
    """Bracket data that is not constant."""


class ConsistencyError(SpinBFVError, RuntimeError):
    """An internal identity failed; indicates a sign or bookkeeping bug."""


class ConfigError(SpinBFVError, ValueError):
    """Malformed run configuration or environment override."""


class ParseError(DomainError):
    """Syntax or static error in an expression, located by byte offset."""

    def __init__(self, message: str, position: int, expected: Optional[Sequence[str]] = None):
        self.position = position
        self.expected = tuple(expected or ())
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {position}{detail}")
