"""Exception types shared across the package."""

from __future__ import annotations


class ProbeBudgetError(Exception):
    """Base class for all package-specific errors."""


class InfeasibleError(ProbeBudgetError):
    """Raised when floors > 0 but no balls are available: no strategy exists."""

    def __init__(self, floors: int, balls: int):
        self.floors = floors
        self.balls = balls
        super().__init__("infeasible: 0 balls, >0 floors")


class CoverageOverflowError(ProbeBudgetError, OverflowError):
    """A coverage value exceeded the signed 64-bit range (never wrapped)."""

    def __init__(self, trials: int, balls: int):
        self.trials = trials
        self.balls = balls
        super().__init__(
            f"coverage value exceeds the 64-bit integer range at (m={trials}, k={balls})"
        )


class TreeSizeError(ProbeBudgetError):
    """Decision tree would exceed the configured leaf guard."""

    def __init__(self, floors: int, max_leaves: int):
        self.floors = floors
        self.max_leaves = max_leaves
        super().__init__(
            f"decision tree for {floors} floors needs {floors + 1} leaves, "
            f"above the guard of {max_leaves}"
        )


class SessionStateError(ProbeBudgetError):
    """Operation applied to a session in the wrong status."""


class ProbeRejectedError(ProbeBudgetError, ValueError):
    """Reported probe is invalid for the current state; the state is unchanged."""
