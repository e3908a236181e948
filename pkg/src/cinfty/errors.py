"""Exception taxonomy shared by every module and surfaced verbatim by the CLI."""

from __future__ import annotations


class CInftyError(Exception):
    """Base class. ``code`` is the name reported in CLI error JSON."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DomainError(CInftyError):
    """Input lies outside the mathematical domain of an operation (CLI exit 2)."""


class CoordinateError(DomainError):
    """A domain error attributable to a single coordinate.

    ``index`` is 0-based; ``in_tail`` marks that the coordinate belongs to the
    constant tail, so every index ``>= index`` is affected as well.
    """

    def __init__(self, message: str, index: int | None = None, in_tail: bool = False):
        super().__init__(message)
        self.index = index
        self.in_tail = in_tail


class ThetaMember(CoordinateError):
    pass


class NegativeModulus(CoordinateError):
    pass


class DomainViolation(CoordinateError):
    pass


class OutsideDomain(CoordinateError):
    pass


class PointOutsideDomain(CoordinateError):
    pass


class InfinityUnsupported(CoordinateError):
    pass


class VanishingDerivative(CoordinateError):
    pass


class EvalFailure(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass


class RadiusBoundary(DomainError):
    pass


class NoGrowthBound(DomainError):
    pass


class GrowthBoundViolated(DomainError):
    pass


class UnsupportedPair(DomainError):
    pass


class NotInClass(DomainError):
    pass


class WrongBasePoints(DomainError):
    pass


class ParseError(CInftyError):
    """Malformed JSON input (CLI exit 3)."""
