"""Exception hierarchy shared by every layer of the package."""


class DetvarError(Exception):
    """Base class for all errors raised by detvar."""


class BadField(DetvarError, ValueError):
    pass


class NonPositiveGrading(DetvarError, ValueError):
    pass


class RingMismatch(DetvarError, ValueError):
    pass


class EmptyDegree(DetvarError, ValueError):
    pass


class ExponentOverflow(DetvarError, OverflowError):
    pass


class ParseError(DetvarError, ValueError):
    """Malformed polynomial text; carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class InhomogeneousInput(DetvarError, ValueError):
    pass


class DegreeBoundExceeded(DetvarError, RuntimeError):
    pass


class UnknownVariable(DetvarError, KeyError):
    pass


class ZeroIdealDivisor(DetvarError, ValueError):
    pass


class SaturationDiverged(DetvarError, RuntimeError):
    pass


class PositiveDimensional(DetvarError, ValueError):
    pass


class BadSize(DetvarError, ValueError):
    pass


class NotAlternating(DetvarError, ValueError):
    pass


class NotQuadratic(DetvarError, ValueError):
    pass


class BadCharacteristic(DetvarError, ValueError):
    pass


class LengthExceeded(DetvarError, RuntimeError):
    pass


class RetrySeed(DetvarError, RuntimeError):
    """A random specialisation missed the open set where a check is meaningful."""


class DegenerateParameters(DetvarError, ValueError):
    pass
