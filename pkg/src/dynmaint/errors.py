"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class DynmaintError(Exception):
    """Base class for all package errors."""


class PreconditionViolation(DynmaintError):
    """An edit operation was applied to a graph where it is not legal."""


class UnknownVertex(DynmaintError):
    pass


class Degenerate(DynmaintError):
    """Generator parameters admit no operation at all."""


class InvalidSolution(DynmaintError):
    def __init__(self, step: int, reason: str) -> None:
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


class CorruptState(DynmaintError):
    """Maintainer state failed its own entry invariants."""


class BudgetExceeded(DynmaintError):
    pass


class MissingOracle(DynmaintError):
    pass


class UnsupportedProblem(DynmaintError):
    pass


class OddClassSize(DynmaintError):
    pass


class InfeasibleParameters(DynmaintError):
    pass


class InvalidInstance(DynmaintError):
    """A source instance violates its structural invariants."""
