"""Ground truth: brute-force minimax DP and exhaustive adversary simulation.

The DP answers "how many trials does the best possible strategy need in
the worst case" without any reference to the binomial coverage function:
``M(w, b) = min over split j of 1 + max(M(j-1, b-1), M(w-j, b))`` over the
width of the candidate interval. Simulation plays the real session engine
against every hidden outcome (each floor breaking first, plus nothing
breaking) and certifies correctness, resource usage, and tightness.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coverage import ProblemInstance, min_trials
from .errors import InfeasibleError
from .strategy import (
    ProbeOutcome,
    SearchResult,
    SessionStatus,
    apply_outcome,
    current_result,
    next_probe,
    start_session,
)

# HiddenOutcome: the floor the adversary committed to (a probe at f breaks
# iff f >= hidden), or None when no floor breaks at all.
HiddenOutcome = int | None


@dataclass(frozen=True)
class SimulationRun:
    result: SearchResult
    trials: int
    breaks: int


@dataclass(frozen=True)
class SimulationReport:
    problem: ProblemInstance
    runs: dict[HiddenOutcome, SimulationRun] = field(hash=False)
    worst_trials: int = 0
    all_correct: bool = True


@dataclass(frozen=True)
class Mismatch:
    check: str
    floors: int
    balls: int
    expected: int
    actual: int


_memo: dict[tuple[int, int], int] = {}
_memo_lock = threading.Lock()
_memo_done: set[tuple[int, int]] = set()  # (max_w, max_b) ranges already filled


def _ensure_table(max_w: int, max_b: int) -> None:
    for done_w, done_b in _memo_done:
        if max_w <= done_w and max_b <= done_b:
            return
    memo = _memo
    for w in range(max_w + 1):
        memo[w, 1] = w
    for b in range(2, max_b + 1):
        memo[0, b] = 0
        for w in range(1, max_w + 1):
            if (w, b) in memo:
                continue
            best = w  # j = w split: 1 + max(M(w-1, b-1), 0) <= w, never worse
            for j in range(1, w + 1):
                broke = memo[j - 1, b - 1]
                survived = memo[w - j, b]
                worst = 1 + (broke if broke > survived else survived)
                if worst < best:
                    best = worst
            memo[w, b] = best
    _memo_done.add((max_w, max_b))


def oracle_min_trials(width: int, balls: int) -> int:
    """Minimal worst-case trials for ``width`` unknown floors, by brute force.

    Exhaustive minimax over every split point, memoized; completely
    independent of the coverage function. Raises InfeasibleError for
    width >= 1 with no balls.
    """
    if width < 0 or balls < 0:
        raise ValueError("width and balls must be >= 0")
    if width == 0:
        return 0
    if balls == 0:
        raise InfeasibleError(width, balls)
    if balls == 1:
        return width  # base case: single ball forces a bottom-up scan
    # beyond ceil(log2(w+1)) extra balls cannot help (bisection depth bound)
    balls = min(balls, width.bit_length())
    with _memo_lock:
        _ensure_table(width, balls)
        return _memo[width, balls]


def oracle_table(max_width: int, max_balls: int) -> np.ndarray:
    """Bulk DP table (kernel-backed). Column b=0 holds -1 placeholders:
    zero balls cannot resolve a non-empty interval (oracle_min_trials
    raises for those arguments rather than returning a number)."""
    return kernels.oracle_fill(max_width, max_balls)


def _validate_hidden(floors: int, hidden: HiddenOutcome) -> None:
    if hidden is None:
        return
    if not 1 <= hidden <= floors:
        raise ValueError(f"hidden outcome must be None or in [1, {floors}]")


def simulate(floors: int, balls: int, hidden: HiddenOutcome) -> SimulationRun:
    """Play one full session against a fixed hidden outcome."""
    _validate_hidden(floors, hidden)
    state = start_session(floors, balls)
    breaks = 0
    while state.status is SessionStatus.ACTIVE:
        floor = next_probe(state)
        if hidden is not None and floor >= hidden:
            breaks += 1
            apply_outcome(state, floor, ProbeOutcome.BROKE)
        else:
            apply_outcome(state, floor, ProbeOutcome.SURVIVED)
    return SimulationRun(
        result=current_result(state), trials=len(state.history), breaks=breaks
    )


def simulate_all(floors: int, balls: int) -> SimulationReport:
    """Exhaustive adversary sweep: every floor breaking first, plus none.

    Hidden outcomes run in the fixed order (None, 1, 2, ..., floors) so
    reports are byte-stable.
    """
    problem = ProblemInstance(floors, balls).require_feasible()
    runs: dict[HiddenOutcome, SimulationRun] = {}
    worst = 0
    correct = True
    for hidden in (None, *range(1, floors + 1)):
        run = simulate(floors, balls, hidden)
        runs[hidden] = run
        worst = max(worst, run.trials)
        if run.result.floor != hidden:
            correct = False
    return SimulationReport(
        problem=problem, runs=runs, worst_trials=worst, all_correct=correct
    )


def cross_check(max_floors: int, max_balls: int) -> list[Mismatch]:
    """Compare the closed form, the DP oracle, and exhaustive simulation.

    Any disagreement is returned as data; an empty list certifies that all
    three agree on every instance in range.
    """
    if max_floors < 1 or max_balls < 1:
        raise ValueError("bounds must be >= 1")
    mismatches: list[Mismatch] = []
    for floors in range(1, max_floors + 1):
        for balls in range(1, max_balls + 1):
            expected = min_trials(floors, balls)
            from_dp = oracle_min_trials(floors, balls)
            if from_dp != expected:
                mismatches.append(
                    Mismatch("oracle_min_trials", floors, balls, expected, from_dp)
                )
            report = simulate_all(floors, balls)
            if report.worst_trials != expected:
                mismatches.append(
                    Mismatch(
                        "simulate_all.worst_trials",
                        floors,
                        balls,
                        expected,
                        report.worst_trials,
                    )
                )
            if not report.all_correct:
                mismatches.append(
                    Mismatch("simulate_all.all_correct", floors, balls, 1, 0)
                )
    return mismatches
