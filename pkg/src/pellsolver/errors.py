"""
Exception hierarchy for pellsolver.

Every error derives from ``PellError`` which is a ``ValueError``, so callers
that already guard numeric input with ``except ValueError`` keep working.
``UsageError`` subclasses mark problems with the request rather than with the
mathematics; the CLI maps them to exit code 2.
"""
from typing import Any, Optional


class PellError(ValueError):
    """Base class for all solver failures."""


class UsageError(PellError):
    """The request itself is malformed."""


class PerfectSquare(PellError):
    """Radicand is a perfect square (or not a natural number above 1)."""

    def __init__(self, radicand: int):
        self.radicand = radicand
        super().__init__(f"{radicand} is a perfect square")


class StepBudgetExceeded(PellError):
    """An iterative procedure did not finish within its step budget."""

    def __init__(self, radicand: int, budget: int, what: str = "continued fraction period"):
        self.radicand = radicand
        self.budget = budget
        super().__init__(f"{what} for A={radicand} not closed within {budget} steps")


class IndexBeyondExpansion(PellError):
    """Convergent requested past the quotients computed so far."""

    def __init__(self, index: int, available: int):
        self.index = index
        self.available = available
        super().__init__(f"convergent {index} needs quotient {index}, only {available} available")


class UltimateFormReached(PellError):
    """Signals that reduction hit a form with value 1 (or the requested terminal value) at X=Y=1."""

    def __init__(self, form: Any):
        self.form = form
        super().__init__(f"ultimate form reached: {form}")


class Unclassifiable(PellError):
    """Reduction ended without a form that yields verified parameters."""

    def __init__(self, radicand: int, reason: str = "no distinctive form found"):
        self.radicand = radicand
        super().__init__(f"A={radicand}: {reason}")


class ConditionViolated(PellError):
    """A distinctive-form condition or identity check failed."""

    def __init__(self, message: str, value: Optional[int] = None):
        self.value = value
        super().__init__(message)


class NotRepresentable(PellError):
    """A has no representation of the requested kind."""

    def __init__(self, radicand: int, kind: Any):
        self.radicand = radicand
        self.kind = kind
        label = getattr(kind, "value", kind)
        super().__init__(f"{radicand} has no {label} representation")


class SquareTarget(PellError):
    """A shifted family member lands on a square (or non-positive) radicand."""

    def __init__(self, radicand: int, shift: int):
        self.radicand = radicand
        self.shift = shift
        super().__init__(f"shift i={shift} gives A={radicand}, not a valid Pell radicand")


class NonPositiveFactor(PellError):
    """A shifted composite factor is zero or negative."""

    def __init__(self, p1: int, p2: int, shift: int):
        self.p1 = p1
        self.p2 = p2
        self.shift = shift
        super().__init__(f"shift i={shift} gives factors ({p1}, {p2})")


class ParityViolation(PellError):
    """A halved bracket in a vertical relation is odd."""

    def __init__(self, bracket: int):
        self.bracket = bracket
        super().__init__(f"bracket {bracket} is odd, a0 would not be an integer")


class MixedRadicand(PellError):
    """Composition of solutions for different radicands."""

    def __init__(self, first: int, second: int):
        super().__init__(f"cannot compose solutions for A={first} and A={second}")


class MismatchDetected(PellError):
    """Two solving methods disagree; always a correctness bug."""

    def __init__(self, radicand: int, expected: Any, actual: Any):
        self.radicand = radicand
        self.expected = expected
        self.actual = actual
        super().__init__(f"A={radicand}: standard gives {expected}, fast gives {actual}")


class UnknownFamily(UsageError):
    """Family identifier not in the registry."""

    def __init__(self, family_id: str):
        self.family_id = family_id
        super().__init__(f"unknown family '{family_id}'")


class IncompleteInterval(UsageError):
    """A table range cuts a k-interval (k^2, (k+1)^2)."""

    def __init__(self, k: int, first: int, last: int):
        self.k = k
        super().__init__(f"range [{first}, {last}] cuts interval k={k} ({k * k}, {(k + 1) ** 2})")
