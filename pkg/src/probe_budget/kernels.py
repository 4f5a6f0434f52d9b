"""Hot integer kernels with two interchangeable backends.

The bulk sweeps (coverage tables, minimum-trials sweeps over large input
arrays, the minimax DP table) are the only compute-bound parts of the
package. Each kernel exists twice:

* a numba ``@njit`` implementation (element-wise loops, int64), and
* a pure numpy implementation (vectorized, int64).

``PROBE_BUDGET_BACKEND`` selects the active one: ``numba``, ``numpy`` or
``auto`` (default; numba when importable). Both backends return identical
values and report 64-bit overflow instead of wrapping; ``use_backend()``
switches at runtime, e.g. for the benchmark in ``benchmarks/``.

All kernels are pure functions; the raw implementations return overflow
coordinates instead of raising so the numba and numpy twins stay
signature-identical, and the public wrappers translate those into
:class:`~probe_budget.errors.CoverageOverflowError`.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import CoverageOverflowError, InfeasibleError

INT64_MAX = int(np.iinfo(np.int64).max)  # 2**63 - 1, the enforced coverage width

# Largest n for which the incremental-row sweep provably stays within
# int64: intermediate totals are bounded by 2n + 1.
MAX_SWEEP_FLOORS = (INT64_MAX - 1) // 2

# 1 + 8n must fit in int64 for the two-ball closed form.
MAX_TWO_BALL_FLOORS = (INT64_MAX - 1) // 8

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is an optional extra
    njit = None
    NUMBA_AVAILABLE = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def coverage_table_np(max_trials: int, max_balls: int):
    """Recurrence-based table fill; returns (table, ovf_m, ovf_k)."""
    table = np.zeros((max_trials + 1, max_balls + 1), dtype=np.int64)
    if max_balls == 0:
        return table, -1, -1
    for m in range(1, max_trials + 1):
        broke = table[m - 1, : max_balls]
        survived = table[m - 1, 1:]
        over = broke > (INT64_MAX - 1) - survived
        if over.any():
            return table, m, int(np.argmax(over)) + 1
        table[m, 1:] = 1 + broke + survived
    return table, -1, -1


def _boundary_row(max_floors: int, balls: int) -> np.ndarray:
    """coverage(m, balls) for m = 0.. until the value reaches max_floors.

    Plain-int Pascal stepping; values stay < 2 * max_floors + 2 so they fit
    int64 for any max_floors <= MAX_SWEEP_FLOORS.
    """
    row = [0] * (balls + 1)
    row[0] = 1
    bounds = [0]
    total = 0
    m = 0
    while total < max_floors:
        m += 1
        hi = min(balls, m)
        for j in range(hi, 0, -1):
            row[j] += row[j - 1]
        total = sum(row[1 : hi + 1])
        bounds.append(total)
    return np.array(bounds, dtype=np.int64)


def min_trials_sweep_np(floors: np.ndarray, balls: int) -> np.ndarray:
    """Smallest m with coverage(m, balls) >= n, for every n in ``floors``."""
    if balls == 1 or floors.size == 0:
        return floors.copy()
    bounds = _boundary_row(int(floors.max()), balls)
    return np.searchsorted(bounds, floors, side="left").astype(np.int64)


def two_ball_sweep_np(floors: np.ndarray) -> np.ndarray:
    """ceil((sqrt(1 + 8n) - 1) / 2) per element, exactly in integers."""
    x = 1 + 8 * floors
    s = np.sqrt(x.astype(np.float64)).astype(np.int64)
    s = np.maximum(s, 1)
    # fix the float seed with division-based checks ((r+1)^2 can overflow)
    while True:
        high = s > x // s
        if not high.any():
            break
        s -= high
    while True:
        low = (s + 1) <= x // (s + 1)
        if not low.any():
            break
        s += low
    exact = (x // s == s) & (x % s == 0)
    return (s - 1) // 2 + np.where(exact, 0, 1)


def oracle_fill_np(max_width: int, max_balls: int) -> np.ndarray:
    """Minimax DP table M(w, b); column b=0 holds -1 placeholders for w >= 1."""
    table = np.zeros((max_width + 1, max_balls + 1), dtype=np.int64)
    table[1:, 0] = -1
    if max_balls >= 1:
        table[:, 1] = np.arange(max_width + 1, dtype=np.int64)
    for b in range(2, max_balls + 1):
        below = table[:, b - 1]
        col = table[:, b]
        for w in range(1, max_width + 1):
            # split at j = 1..w: broke -> (j-1, b-1), survived -> (w-j, b)
            col[w] = 1 + np.maximum(below[:w], col[w - 1 :: -1]).min()
    return table


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def coverage_table_nb(max_trials, max_balls):  # pragma: no cover - jitted
        table = np.zeros((max_trials + 1, max_balls + 1), dtype=np.int64)
        for m in range(1, max_trials + 1):
            for k in range(1, max_balls + 1):
                broke = table[m - 1, k - 1]
                survived = table[m - 1, k]
                if broke > INT64_MAX - 1 - survived:
                    return table, m, k
                table[m, k] = 1 + broke + survived
        return table, -1, -1

    @njit(cache=True)
    def _min_trials_one(n, balls, row):  # pragma: no cover - jitted
        if n <= 0:
            return 0
        if balls == 1:
            return n
        for j in range(balls + 1):
            row[j] = 0
        row[0] = 1
        m = 0
        total = 0
        while total < n:
            m += 1
            hi = balls if balls < m else m
            # coverage(m,k) = 1 + coverage(m-1,k-1) + coverage(m-1,k)
            total = 1 + 2 * total - row[balls]
            for j in range(hi, 0, -1):
                row[j] += row[j - 1]
        return m

    @njit(cache=True)
    def min_trials_scalar_nb(n, balls):  # pragma: no cover - jitted
        row = np.zeros(balls + 1, dtype=np.int64)
        return _min_trials_one(n, balls, row)

    @njit(cache=True)
    def min_trials_sweep_nb(floors, balls):  # pragma: no cover - jitted
        out = np.empty(floors.shape[0], dtype=np.int64)
        row = np.zeros(balls + 1, dtype=np.int64)
        for i in range(floors.shape[0]):
            out[i] = _min_trials_one(floors[i], balls, row)
        return out

    @njit(cache=True)
    def _isqrt64(x):  # pragma: no cover - jitted
        if x <= 0:
            return 0
        r = int(math.sqrt(float(x)))
        if r < 1:
            r = 1
        while r > x // r:
            r -= 1
        while (r + 1) <= x // (r + 1):
            r += 1
        return r

    @njit(cache=True)
    def two_ball_sweep_nb(floors):  # pragma: no cover - jitted
        out = np.empty(floors.shape[0], dtype=np.int64)
        for i in range(floors.shape[0]):
            x = 1 + 8 * floors[i]
            s = _isqrt64(x)
            m = (s - 1) // 2
            if s * s != x:
                m += 1
            out[i] = m
        return out

    @njit(cache=True)
    def oracle_fill_nb(max_width, max_balls):  # pragma: no cover - jitted
        table = np.zeros((max_width + 1, max_balls + 1), dtype=np.int64)
        for w in range(1, max_width + 1):
            table[w, 0] = -1
            if max_balls >= 1:
                table[w, 1] = w
        for b in range(2, max_balls + 1):
            for w in range(1, max_width + 1):
                best = INT64_MAX
                for j in range(1, w + 1):
                    broke = table[j - 1, b - 1]
                    survived = table[w - j, b]
                    worst = broke if broke > survived else survived
                    if 1 + worst < best:
                        best = 1 + worst
                table[w, b] = best
        return table


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

BACKENDS = ("numba", "numpy")


def _backend_from_env() -> str:
    requested = os.environ.get("PROBE_BUDGET_BACKEND", "auto").strip().lower()
    if requested in ("", "auto"):
        return "numba" if NUMBA_AVAILABLE else "numpy"
    if requested == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError(
                "PROBE_BUDGET_BACKEND=numba but numba is not importable"
            )
        return "numba"
    if requested == "numpy":
        return "numpy"
    raise RuntimeError(
        f"PROBE_BUDGET_BACKEND={requested!r} not recognized; "
        f"use one of auto, numba, numpy"
    )


_ACTIVE = _backend_from_env()


def active_backend() -> str:
    return _ACTIVE


def use_backend(name: str) -> str:
    """Switch the active backend; returns the previous one."""
    global _ACTIVE
    if name == "auto":
        name = "numba" if NUMBA_AVAILABLE else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is not importable")
    previous = _ACTIVE
    _ACTIVE = name
    return previous


def _numba_active() -> bool:
    return _ACTIVE == "numba"


# ---------------------------------------------------------------------------
# public wrappers
# ---------------------------------------------------------------------------

def coverage_table(max_trials: int, max_balls: int) -> np.ndarray:
    """Full coverage matrix for 0 <= m <= max_trials, 0 <= k <= max_balls.

    Raises CoverageOverflowError naming the first offending cell (row-major
    scan) if any entry would exceed the 64-bit range.
    """
    if max_trials < 0 or max_balls < 0:
        raise ValueError("table bounds must be >= 0")
    impl = coverage_table_nb if _numba_active() else coverage_table_np
    table, ovf_m, ovf_k = impl(max_trials, max_balls)
    if ovf_m >= 0:
        raise CoverageOverflowError(int(ovf_m), int(ovf_k))
    return table


def _as_floors_array(floors) -> np.ndarray:
    arr = np.asarray(floors, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d array of floor counts")
    if arr.size and int(arr.min()) < 0:
        raise ValueError("floor counts must be >= 0")
    return arr


def min_trials_sweep(floors, balls: int) -> np.ndarray:
    """min_trials(n, balls) for every n in ``floors`` (1-d array-like)."""
    arr = _as_floors_array(floors)
    if balls < 0:
        raise ValueError("balls must be >= 0")
    if balls == 0:
        if arr.size and int(arr.max()) > 0:
            raise InfeasibleError(int(arr.max()), 0)
        return np.zeros(arr.shape, dtype=np.int64)
    if arr.size and int(arr.max()) > MAX_SWEEP_FLOORS:
        raise ValueError(
            f"sweep supports floor counts up to {MAX_SWEEP_FLOORS}; "
            "use min_trials() for larger values"
        )
    # k beyond 63 cannot change the answer for n within the 64-bit range
    balls_eff = min(balls, 63)
    if _numba_active():
        return min_trials_sweep_nb(arr, balls_eff)
    return min_trials_sweep_np(arr, balls_eff)


def two_ball_sweep(floors) -> np.ndarray:
    """Two-ball closed form for every n in ``floors`` (1-d array-like)."""
    arr = _as_floors_array(floors)
    if arr.size and int(arr.max()) > MAX_TWO_BALL_FLOORS:
        raise ValueError(
            f"sweep supports floor counts up to {MAX_TWO_BALL_FLOORS}; "
            "use min_trials_two_balls() for larger values"
        )
    if _numba_active():
        return two_ball_sweep_nb(arr)
    return two_ball_sweep_np(arr)


def oracle_fill(max_width: int, max_balls: int) -> np.ndarray:
    """Minimax DP table; see oracle.oracle_table for the public contract."""
    if max_width < 0 or max_balls < 0:
        raise ValueError("table bounds must be >= 0")
    impl = oracle_fill_nb if _numba_active() else oracle_fill_np
    return impl(max_width, max_balls)


def min_trials_scalar(n: int, balls: int) -> int | None:
    """Kernel-backed scalar min_trials; None when out of int64 sweep range."""
    if not _numba_active() or n > MAX_SWEEP_FLOORS:
        return None
    return int(min_trials_scalar_nb(n, min(balls, 63)))


def warmup() -> None:
    """Trigger JIT compilation of every numba kernel (no-op on numpy)."""
    if not NUMBA_AVAILABLE:
        return
    coverage_table_nb(2, 2)
    min_trials_scalar_nb(3, 2)
    min_trials_sweep_nb(np.array([1, 5], dtype=np.int64), 2)
    two_ball_sweep_nb(np.array([0, 6], dtype=np.int64))
    oracle_fill_nb(3, 2)
