"""Exception types shared across the package."""

from __future__ import annotations


class DelaycodeError(Exception):
    """Base class for all library errors."""


class NotAPrefix(DelaycodeError):
    """Raised when a sequence quotient x^-1 y is requested but x is not a prefix of y."""


class EmptySequence(DelaycodeError):
    """Raised when pref/suff is applied to an empty sequence."""


class IndexOutOfRange(DelaycodeError):
    """Raised when a table index or symbol id is outside its valid range."""


class NotDecodable(DelaycodeError):
    """Raised when an operation requires a k-bit delay decodable code-tuple."""


class InconsistentBits(DelaycodeError):
    """Raised when decoder input is not a prefix of any achievable bit sequence."""


class NonRegular(DelaycodeError):
    """Raised when an operation requires a unique stationary distribution."""


class NonIrreducible(DelaycodeError):
    """Raised when an operation requires every table to be recurrent."""


class PreconditionFailed(DelaycodeError):
    """Raised when a pipeline input fails one of its validated preconditions.

    ``failed`` lists the names of the properties that did not hold.
    """

    def __init__(self, failed: tuple[str, ...]):
        self.failed = failed
        super().__init__(f"precondition failed: {', '.join(failed)}")


class InfeasibleBounds(DelaycodeError):
    """Raised when a search admits no valid code-tuple within its bounds."""


class ParseError(DelaycodeError):
    """Raised on malformed document input; carries the offending line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
