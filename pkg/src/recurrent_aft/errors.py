"""Exception hierarchy shared by the engine modules."""


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class NonConvergence(EngineError):
    """Kleene iteration did not reach a fixpoint within its iteration budget."""


class InvalidSample(EngineError):
    """A property-check sample violated the check's precondition."""


class TooLarge(EngineError):
    """A brute-force enumeration was refused because the input exceeds its cap."""


class SignatureTooLarge(TooLarge):
    """Truth-table entailment was asked to range over too many atoms."""


class KbSyntaxError(EngineError):
    """Malformed knowledge-base text."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class MonotonicityViolation(EngineError):
    """An operator assumed monotone produced an out-of-order image.

    ``pair`` holds the offending ``(x, y)`` inputs (or consecutive iterates).
    """

    def __init__(self, message: str, pair):
        super().__init__(message)
        self.pair = pair
