"""Coverage function, minimum-trials inversion, and the optimal probe schedule.

The central quantity is the coverage value: the largest number of unknown
floors that m trials and k breakable balls can fully resolve. It satisfies
the recurrence ``cov(m, k) = 1 + cov(m-1, k-1) + cov(m-1, k)`` (probe once;
a break spends a ball and leaves the floors below, a survival leaves the
floors above) and equals the binomial sum ``sum_{j=1..k} C(m, j)``.

Inverting it gives the minimal worst-case trial count for a given building:
the smallest m with ``cov(m, k) >= n``. Note the strict lower bound
``cov(m-1, k) < n`` that comes with it; the looser variant with a ``1 +``
on the left is *not* used here (it disagrees at the bracket edge and does
not match the recurrence or the DP oracle).

Values are exact integers, capped at the signed 64-bit maximum with an
explicit overflow error; nothing here ever touches floating point.
"""

from __future__ import annotations

import functools
import math
import operator
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CoverageOverflowError, InfeasibleError
from .kernels import INT64_MAX as COVERAGE_LIMIT


@dataclass(frozen=True)
class ProblemInstance:
    """A building with ``floors`` floors searched using ``balls`` balls."""

    floors: int
    balls: int

    def __post_init__(self):
        object.__setattr__(self, "floors", operator.index(self.floors))
        object.__setattr__(self, "balls", operator.index(self.balls))
        if self.floors < 0:
            raise ValueError("floors must be >= 0")
        if self.balls < 0:
            raise ValueError("balls must be >= 0")

    @property
    def feasible(self) -> bool:
        return self.floors == 0 or self.balls >= 1

    def require_feasible(self) -> "ProblemInstance":
        if not self.feasible:
            raise InfeasibleError(self.floors, self.balls)
        return self


@dataclass(frozen=True)
class ProbeSchedule:
    """No-break probe path: floors probed while every ball survives.

    ``trials`` is the full worst-case budget; the path itself may be shorter
    when the top gaps are clamped at the roof.
    """

    problem: ProblemInstance
    trials: int
    probes: tuple[int, ...]


def _check_args(trials: int, balls: int) -> tuple[int, int]:
    # operator.index keeps numpy integers from leaking into exact arithmetic
    trials = operator.index(trials)
    balls = operator.index(balls)
    if trials < 0:
        raise ValueError("trials must be >= 0")
    if balls < 0:
        raise ValueError("balls must be >= 0")
    return trials, balls


def coverage(trials: int, balls: int) -> int:
    """Maximum floor count resolvable with ``trials`` trials and ``balls`` balls.

    Computed as the binomial sum with incremental exact-integer terms
    (``C(m,j) = C(m,j-1) * (m-j+1) / j``). Raises CoverageOverflowError
    beyond the 64-bit cap.
    """
    trials, balls = _check_args(trials, balls)
    total = 0
    term = 1
    for j in range(1, min(trials, balls) + 1):
        term = term * (trials - j + 1) // j
        total += term
        if total > COVERAGE_LIMIT:
            raise CoverageOverflowError(trials, balls)
    return total


def coverage_recurrence(trials: int, balls: int) -> int:
    """Same value as :func:`coverage`, via the memoized two-term recurrence.

    Independent reference path for property tests; O(m*k) time, O(k) memory.
    """
    trials, balls = _check_args(trials, balls)
    if trials == 0 or balls == 0:
        return 0
    prev = [0] * (balls + 1)
    cur = [0] * (balls + 1)
    for m in range(1, trials + 1):
        for k in range(1, balls + 1):
            value = 1 + prev[k - 1] + prev[k]
            if value > COVERAGE_LIMIT:
                raise CoverageOverflowError(trials, balls)
            cur[k] = value
        prev, cur = cur, prev
    return prev[balls]


coverage_cached = functools.lru_cache(maxsize=None)(coverage)


def coverage_table(max_trials: int, max_balls: int) -> np.ndarray:
    """Matrix of coverage values, 0..max_trials by 0..max_balls (int64)."""
    return kernels.coverage_table(max_trials, max_balls)


def min_trials(floors: int, balls: int) -> int:
    """Smallest m with coverage(m, balls) >= floors.

    Walks m upward maintaining the binomial row incrementally, so no value
    larger than about twice ``floors`` is ever formed and m is never
    overshot. Raises InfeasibleError for floors > 0 with no balls.
    """
    floors = operator.index(floors)
    balls = operator.index(balls)
    if floors < 0:
        raise ValueError("floors must be >= 0")
    if balls < 0:
        raise ValueError("balls must be >= 0")
    if floors == 0:
        return 0
    if balls == 0:
        raise InfeasibleError(floors, balls)
    if balls == 1:
        return floors
    fast = kernels.min_trials_scalar(floors, balls)
    if fast is not None:
        return fast
    balls = min(balls, max(1, floors.bit_length()))
    row = [0] * (balls + 1)
    row[0] = 1
    m = 0
    total = 0
    while total < floors:
        m += 1
        total = 1 + 2 * total - row[balls]
        for j in range(min(balls, m), 0, -1):
            row[j] += row[j - 1]
    return m


def min_trials_bulk(floors, balls: int) -> np.ndarray:
    """Vectorized :func:`min_trials` over a 1-d array of floor counts."""
    return kernels.min_trials_sweep(floors, balls)


def min_trials_two_balls(floors: int) -> int:
    """Closed form for two balls: ceil((sqrt(1 + 8n) - 1) / 2), exactly.

    Integer square root only; agrees with ``min_trials(floors, 2)`` for
    every n >= 0 (equality is exact at the triangular numbers).
    """
    floors = operator.index(floors)
    if floors < 0:
        raise ValueError("floors must be >= 0")
    x = 1 + 8 * floors
    s = math.isqrt(x)
    m = (s - 1) // 2
    if s * s != x:
        m += 1
    return m


def min_trials_two_balls_bulk(floors) -> np.ndarray:
    """Vectorized :func:`min_trials_two_balls` over a 1-d array."""
    return kernels.two_ball_sweep(floors)


def min_trials_unbounded(floors: int) -> int:
    """ceil(log2(n + 1)): the binary-search bound once balls stop mattering.

    Equals ``min_trials(floors, k)`` for every k at or above the returned
    value. Bit-length arithmetic, so no rounding can flip the answer.
    """
    floors = operator.index(floors)
    if floors < 0:
        raise ValueError("floors must be >= 0")
    return floors.bit_length()


def probe_schedule(floors: int, balls: int) -> ProbeSchedule:
    """Optimal no-break probe path for a feasible instance.

    Successive gaps shrink with the remaining budget: each probe sits
    ``coverage(m - i, balls - 1) + 1`` above the previous one, clamped at
    the roof; the path ends at the first probe reaching the top floor.
    """
    problem = ProblemInstance(floors, balls).require_feasible()
    m = min_trials(floors, balls)
    probes: list[int] = []
    p = 0
    for i in range(1, m + 1):
        p = min(p + 1 + coverage_cached(m - i, balls - 1), floors)
        probes.append(p)
        if p == floors:
            break
    return ProbeSchedule(problem=problem, trials=m, probes=tuple(probes))
