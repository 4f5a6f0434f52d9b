"""Minimal worst-case threshold search with destructible probes.

Given a building with ``n`` floors and ``k`` identical breakable balls,
find the lowest floor a dropped ball breaks from (or certify that none
does) in the provably minimal worst-case number of trials. The package
provides the exact coverage combinatorics, the adaptive optimal strategy
as a session state machine, an independent brute-force oracle plus
exhaustive adversary simulation, and a CLI / HTTP service on top.
"""

from .coverage import (
    COVERAGE_LIMIT,
    ProbeSchedule,
    ProblemInstance,
    coverage,
    coverage_cached,
    coverage_recurrence,
    coverage_table,
    min_trials,
    min_trials_bulk,
    min_trials_two_balls,
    min_trials_two_balls_bulk,
    min_trials_unbounded,
    probe_schedule,
)
from .errors import (
    CoverageOverflowError,
    InfeasibleError,
    ProbeBudgetError,
    ProbeRejectedError,
    SessionStateError,
    TreeSizeError,
)
from .oracle import (
    HiddenOutcome,
    Mismatch,
    SimulationReport,
    SimulationRun,
    cross_check,
    oracle_min_trials,
    oracle_table,
    simulate,
    simulate_all,
)
from .strategy import (
    DEFAULT_TREE_GUARD,
    NO_FLOOR_BREAKS,
    ProbeOutcome,
    SearchResult,
    SearchState,
    SessionStatus,
    TreeLeaf,
    TreeNode,
    TreeStats,
    apply_outcome,
    build_tree,
    current_result,
    next_probe,
    start_session,
    tree_stats,
)

__version__ = "0.1.0"

__all__ = [
    "COVERAGE_LIMIT",
    "CoverageOverflowError",
    "DEFAULT_TREE_GUARD",
    "HiddenOutcome",
    "InfeasibleError",
    "Mismatch",
    "NO_FLOOR_BREAKS",
    "ProbeBudgetError",
    "ProbeOutcome",
    "ProbeRejectedError",
    "ProbeSchedule",
    "ProblemInstance",
    "SearchResult",
    "SearchState",
    "SessionStateError",
    "SessionStatus",
    "SimulationReport",
    "SimulationRun",
    "TreeLeaf",
    "TreeNode",
    "TreeSizeError",
    "TreeStats",
    "apply_outcome",
    "build_tree",
    "coverage",
    "coverage_cached",
    "coverage_recurrence",
    "coverage_table",
    "cross_check",
    "current_result",
    "min_trials",
    "min_trials_bulk",
    "min_trials_two_balls",
    "min_trials_two_balls_bulk",
    "min_trials_unbounded",
    "next_probe",
    "oracle_min_trials",
    "oracle_table",
    "probe_schedule",
    "simulate",
    "simulate_all",
    "start_session",
    "tree_stats",
    "__version__",
]
