"""Exception hierarchy shared by every evaluator.

Each class name doubles as the ``error_kind`` string written into reports.
"""


class MockThetaError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class DivisionByZero(MockThetaError, ZeroDivisionError):
    pass


class ZeroSeries(MockThetaError, ZeroDivisionError):
    """Inverting a series with no nonzero coefficient up to its order."""


class InsufficientOrder(MockThetaError):
    pass


class DivergentProduct(MockThetaError):
    pass


class NonGeneric(MockThetaError):
    """Parameters hit a zero of a theta denominator or a pole of a sum."""


class PoleAtOne(NonGeneric):
    pass


class DegenerateZ(NonGeneric):
    pass


class NonGenericPole(NonGeneric):
    pass


class ZeroDenominator(NonGeneric, ZeroDivisionError):
    pass


class UnsupportedForm(MockThetaError):
    pass


class ParseError(MockThetaError, ValueError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)
