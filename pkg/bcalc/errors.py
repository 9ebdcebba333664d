"""Exceptions and warnings raised by bcalc."""

from typing import NamedTuple, Optional

__all__ = [
    "Position",
    "Span",
    "BeliefError",
    "OutOfRangeError",
    "AdditivityError",
    "InvalidVectorError",
    "FrameError",
    "EmptyTargetError",
    "ForeignSubsetError",
    "PreconditionError",
    "ZeroShapeParameterError",
    "DogmaticOpinionError",
    "SingularEndpointError",
    "BaseRateOverflowError",
    "DegenerateBaseRateError",
    "EqualBaseRatesError",
    "MissingLimitParamError",
    "NotDivisibleError",
    "DivisionByFalseError",
    "NotCodivisibleError",
    "CodivisionByTrueError",
    "InternalRangeError",
    "ZeroDenominatorError",
    "LexError",
    "ParseError",
    "UnboundVariableError",
    "ScalarDomainError",
    "FormatError",
    "ClippingWarning",
]


class Position(NamedTuple):
    """Location in a source text (1-based line and column)."""

    line: int
    column: int

    def __str__(self):
        return f"line {self.line}, column {self.column}"


class Span(NamedTuple):
    """Source range covered by an expression node (end is exclusive)."""

    start: Position
    end: Position

    def __str__(self):
        return str(self.start)


class BeliefError(ValueError):
    """Base class for all the domain errors of bcalc.

    The optional *span* locates the expression node that caused the
    error; it is filled by the expression evaluator.
    """

    def __init__(self, message: str, *, span: Optional[Span] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self):
        if self.span is not None:
            return f"{self.span}: {self.message}"
        return self.message


class OutOfRangeError(BeliefError):
    pass


class AdditivityError(BeliefError):
    pass


class InvalidVectorError(BeliefError):
    pass


class FrameError(BeliefError):
    pass


class EmptyTargetError(BeliefError):
    pass


class ForeignSubsetError(BeliefError):
    pass


class PreconditionError(BeliefError):
    """An operation has been called outside of its domain.

    The *failed* attribute lists the violated conditions.
    """

    def __init__(self, message: str, failed=(), *, span=None):
        super().__init__(message, span=span)
        self.failed = tuple(failed)


class ZeroShapeParameterError(BeliefError):
    pass


class DogmaticOpinionError(BeliefError):
    pass


class SingularEndpointError(BeliefError):
    pass


class BaseRateOverflowError(PreconditionError):
    pass


class DegenerateBaseRateError(BeliefError):
    pass


class EqualBaseRatesError(BeliefError):
    pass


class MissingLimitParamError(BeliefError):
    pass


class NotDivisibleError(PreconditionError):
    pass


class DivisionByFalseError(BeliefError):
    pass


class NotCodivisibleError(PreconditionError):
    pass


class CodivisionByTrueError(BeliefError):
    pass


class InternalRangeError(BeliefError):
    pass


class ZeroDenominatorError(BeliefError):
    pass


class LexError(BeliefError):
    def __init__(self, message: str, position: Position):
        super().__init__(message, span=Span(position, position))
        self.position = position


class ParseError(BeliefError):
    """Syntax error; *expected* is the set of admissible token names."""

    def __init__(self, message: str, position: Position, expected=()):
        super().__init__(message, span=Span(position, position))
        self.position = position
        self.expected = frozenset(expected)


class UnboundVariableError(BeliefError):
    pass


class ScalarDomainError(BeliefError):
    pass


class FormatError(BeliefError):
    """Malformed interchange document (frame, environment, record)."""


class ClippingWarning(UserWarning):
    """An operator result has been projected back onto legal values."""
