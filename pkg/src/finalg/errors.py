"""Exception hierarchy shared by every layer of the library."""


class FinalgError(Exception):
    pass


class NonPrime(FinalgError, ValueError):
    pass


class SizeExceeded(FinalgError):
    """Raised when a construction or query would exceed the configured bounds."""

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: {size} exceeds bound {bound}")


class BadParameter(FinalgError, ValueError):
    pass


class LengthMismatch(FinalgError, ValueError):
    pass


class DivisionByZero(FinalgError, ZeroDivisionError):
    pass


class InternalInconsistency(FinalgError, AssertionError):
    """An invariant that finiteness guarantees was observed to fail."""


class ParseError(FinalgError, ValueError):
    def __init__(self, message: str, position: int, expected: frozenset[str] = frozenset()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")
