"""Exception hierarchy shared by every sigma-witt module.

Each error carries a ``context`` dict naming the operation and its inputs so that
the CLI can report failures without losing where they came from.
"""
from typing import Any, Optional


class SigmaWittError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "context": {k: str(v) for k, v in self.context.items()},
        }

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{self.message} ({details})"


class UsageError(SigmaWittError):
    """Errors caused by user input; the CLI exits with code 2."""


# --- coefficient fields ---

class DivisionByZero(SigmaWittError, ZeroDivisionError):
    pass


class MixedFields(SigmaWittError):
    pass


class ZeroInput(SigmaWittError):
    pass


# --- rings ---

class MixedRings(SigmaWittError):
    pass


class NotDivisible(SigmaWittError):
    pass


class AllZero(SigmaWittError):
    pass


class UnsupportedMultivariateGcd(SigmaWittError):
    pass


# --- endomorphisms and algebras ---

class NegativeExponentOnNonUnit(SigmaWittError):
    pass


class SigmaIsIdentityOnSample(SigmaWittError):
    pass


class InvalidOverride(SigmaWittError):
    pass


class DeltaNotInRing(SigmaWittError):
    pass


# --- ideals ---

class SingularSystem(SigmaWittError):
    """Vandermonde system with two coinciding eigenvalues."""

    def __init__(self, message: str, pair: Optional[tuple] = None, eigenvalue: Any = None, **context: Any):
        super().__init__(message, **context)
        self.pair = pair
        self.eigenvalue = eigenvalue


class UnsupportedSigma(SigmaWittError):
    pass


class ZeroGenerator(SigmaWittError):
    pass


class UnsupportedFamily(UsageError):
    pass


# --- configuration and expressions ---

class ConfigError(UsageError):
    pass


class ExpressionError(UsageError):
    """Base for parser errors; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int = 0, **context: Any):
        super().__init__(message, position=position, **context)
        self.position = position


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, position: int, expected: str, found: str = ""):
        super().__init__(f"syntax error at {position}: expected {expected}", position=position,
                         expected=expected, found=found)
        self.expected = expected


class ExponentDomainError(ExpressionError):
    pass


class UnknownSymbol(ExpressionError):
    pass
