"""Exception types raised by the engine.

Every engine error derives from :class:`EngineError`, so the CLI can render
any of them by class name.
"""


class EngineError(Exception):
    pass


class IncompatibleField(EngineError):
    pass


class DivisionByZero(EngineError, ZeroDivisionError):
    pass


class NotAField(EngineError):
    """Raised when an element has no inverse because the modulus is reducible."""


class DimensionMismatch(EngineError, ValueError):
    pass


class NotDivisible(EngineError):
    pass


class ZeroPolynomial(EngineError, ValueError):
    pass


class AlgebraMismatch(EngineError):
    pass


class SizeLimit(EngineError):
    pass


class NotCentral(EngineError):
    """``x_i^{d_i}`` fails to commute with ``x_j`` (indices are 0-based)."""

    def __init__(self, i, j, power):
        self.i, self.j, self.power = i, j, power
        super().__init__(f"x{i + 1}^{power} does not commute with x{j + 1}")


class NotAHomomorphism(EngineError):
    pass


class InvarianceViolated(EngineError):
    pass


class InternalInconsistency(EngineError):
    pass


class PreconditionViolation(EngineError, ValueError):
    pass


class ParseError(EngineError, ValueError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class RelationIndexError(EngineError, IndexError):
    pass
