"""Adaptive search sessions and the materialized decision tree.

A session tracks the candidate interval for the lowest breaking floor and
hands out the next probe under the optimal policy: place the probe so that
a break leaves exactly the block the remaining budget can still resolve,
``low + coverage(attempts_left - 1, balls_left - 1)``, clamped to the top
of the interval. Callers are free to report outcomes for *other* floors
inside the interval (manual override); optimality then lapses and a budget
shortfall is surfaced as an Invalid status instead of an assertion.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass, field

from .coverage import ProblemInstance, coverage_cached, min_trials
from .errors import ProbeRejectedError, SessionStateError, TreeSizeError

DEFAULT_TREE_GUARD = 4096  # maximum leaves build_tree accepts by default


class ProbeOutcome(str, enum.Enum):
    BROKE = "broke"
    SURVIVED = "survived"


class SessionStatus(str, enum.Enum):
    ACTIVE = "active"
    RESOLVED = "resolved"
    INVALID = "invalid"


@dataclass(frozen=True)
class SearchResult:
    """Final answer: the lowest breaking floor, or None if nothing breaks."""

    floor: int | None


NO_FLOOR_BREAKS = SearchResult(None)


@dataclass
class SearchState:
    problem: ProblemInstance
    low: int
    break_floor: int | None
    balls_left: int
    attempts_left: int
    history: list[tuple[int, ProbeOutcome]] = field(default_factory=list)
    status: SessionStatus = SessionStatus.ACTIVE
    result: SearchResult | None = None
    invalid_reason: str | None = None

    @property
    def unknown_top(self) -> int:
        """Highest floor still possibly the lowest breaking one."""
        if self.break_floor is not None:
            return self.break_floor - 1
        return self.problem.floors

    @property
    def unknown_count(self) -> int:
        return max(0, self.unknown_top - self.low + 1)


def start_session(floors: int, balls: int) -> SearchState:
    """Fresh session with the minimal worst-case budget already fixed.

    Raises InfeasibleError for floors > 0 with no balls. An empty building
    resolves immediately to "no floor breaks".
    """
    problem = ProblemInstance(floors, balls).require_feasible()
    state = SearchState(
        problem=problem,
        low=1,
        break_floor=None,
        balls_left=problem.balls,
        attempts_left=min_trials(problem.floors, problem.balls),
        history=[],
    )
    if problem.floors == 0:
        state.status = SessionStatus.RESOLVED
        state.result = NO_FLOOR_BREAKS
    return state


def _require_active(state: SearchState) -> None:
    if state.status is not SessionStatus.ACTIVE:
        raise SessionStateError(f"session is {state.status.value}, not active")


def next_probe(state: SearchState) -> int:
    """Floor the optimal policy probes next; always inside the interval."""
    _require_active(state)
    reach = state.low + coverage_cached(state.attempts_left - 1, state.balls_left - 1)
    top = state.unknown_top
    return reach if reach < top else top


def apply_outcome(state: SearchState, floor: int, outcome) -> SearchState:
    """Record one probe outcome and advance the session in place.

    The floor must lie in the current candidate interval; anything else is
    rejected without touching the state. After the update the session
    resolves, stays active, or (after an off-policy probe that overspent
    the budget) turns Invalid.
    """
    _require_active(state)
    floor = operator.index(floor)
    outcome = ProbeOutcome(outcome)
    if floor < state.low or floor > state.unknown_top:
        raise ProbeRejectedError(
            f"floor {floor} is outside the candidate interval "
            f"[{state.low}, {state.unknown_top}]"
        )
    if outcome is ProbeOutcome.BROKE and state.balls_left == 0:
        raise ProbeRejectedError("no balls left to break")

    state.history.append((floor, outcome))
    state.attempts_left -= 1
    if outcome is ProbeOutcome.BROKE:
        state.balls_left -= 1
        state.break_floor = floor
    else:
        state.low = floor + 1

    if state.unknown_count == 0:
        state.status = SessionStatus.RESOLVED
        if state.break_floor is not None:
            state.result = SearchResult(state.break_floor)
        else:
            state.result = NO_FLOOR_BREAKS
    elif state.unknown_count > coverage_cached(state.attempts_left, state.balls_left):
        state.status = SessionStatus.INVALID
        state.invalid_reason = "budget insufficient"
    return state


def current_result(state: SearchState) -> SearchResult | None:
    """Resolved result, or None while the session is still pending."""
    if state.status is SessionStatus.ACTIVE:
        return None
    if state.status is SessionStatus.INVALID:
        raise SessionStateError(f"session is invalid: {state.invalid_reason}")
    return state.result


# ---------------------------------------------------------------------------
# decision tree
# ---------------------------------------------------------------------------

@dataclass
class TreeLeaf:
    result: SearchResult


@dataclass
class TreeNode:
    probe: int
    on_broke: "TreeNode | TreeLeaf | None" = None
    on_survived: "TreeNode | TreeLeaf | None" = None


@dataclass(frozen=True)
class TreeStats:
    leaves: int
    internal_nodes: int
    depth: int
    max_breaks_on_path: int


def build_tree(floors: int, balls: int, max_leaves: int | None = None):
    """Unroll the full policy into an explicit tree (one leaf per outcome).

    Guarded by a leaf cap (floors + 1 leaves; default DEFAULT_TREE_GUARD)
    since the tree holds 2*floors + 1 nodes. Built iteratively: the
    single-ball chain is as deep as the building is tall.
    """
    problem = ProblemInstance(floors, balls).require_feasible()
    guard = DEFAULT_TREE_GUARD if max_leaves is None else max_leaves
    if problem.floors + 1 > guard:
        raise TreeSizeError(problem.floors, guard)

    budget = min_trials(problem.floors, problem.balls)
    root: list = [None]

    # frame: (low, high, attempts, balls, broke_above, container, slot)
    # where high + 1 is the recorded break floor whenever broke_above is set
    stack = [(1, problem.floors, budget, problem.balls, False, root, 0)]
    while stack:
        low, high, attempts, balls_left, broke_above, container, slot = stack.pop()
        if low > high:
            result = SearchResult(high + 1) if broke_above else NO_FLOOR_BREAKS
            node = TreeLeaf(result)
        else:
            reach = low + coverage_cached(attempts - 1, balls_left - 1)
            probe = reach if reach < high else high
            node = TreeNode(probe)
            stack.append(
                (low, probe - 1, attempts - 1, balls_left - 1, True, node, "on_broke")
            )
            stack.append(
                (probe + 1, high, attempts - 1, balls_left, broke_above, node, "on_survived")
            )
        if isinstance(container, list):
            container[slot] = node
        else:
            setattr(container, slot, node)
    return root[0]


def tree_stats(tree) -> TreeStats:
    """Exact counts by iterative traversal."""
    leaves = internal = depth = max_breaks = 0
    stack = [(tree, 0, 0)]
    while stack:
        node, d, breaks = stack.pop()
        if isinstance(node, TreeLeaf):
            leaves += 1
            depth = max(depth, d)
            max_breaks = max(max_breaks, breaks)
        else:
            internal += 1
            stack.append((node.on_broke, d + 1, breaks + 1))
            stack.append((node.on_survived, d + 1, breaks))
    return TreeStats(
        leaves=leaves,
        internal_nodes=internal,
        depth=depth,
        max_breaks_on_path=max_breaks,
    )
