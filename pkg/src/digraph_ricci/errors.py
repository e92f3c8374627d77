"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class RicciError(Exception):
    """Base class for all package errors."""


class DomainError(RicciError, ValueError):
    """An argument lies outside the range an operation accepts."""


class ParseError(RicciError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SelfLoop(ParseError):
    pass


class NotStronglyConnected(RicciError, ValueError):
    """Raised with a witness pair ``(source, target)`` that has no directed path."""

    def __init__(self, source: str, target: str):
        self.source = source
        self.target = target
        super().__init__(f"no path {source}→{target}")


class NoSolution(RicciError, ArithmeticError):
    pass


class NonUnique(RicciError, ArithmeticError):
    pass


class Infeasible(RicciError):
    pass


class Unbounded(RicciError):
    pass


class PerronDegenerate(RicciError):
    pass


class BudgetExceeded(RicciError):
    pass


class NotRegular(RicciError, ValueError):
    pass


class NotAnEdge(RicciError, ValueError):
    pass


class HypothesisNotMet(RicciError):
    pass
