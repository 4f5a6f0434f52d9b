"""Rendering helpers: JSON/CSV/DOT documents and the session state schema.

Every JSON document is built from insertion-ordered dicts with fixed key
order, so serialization is byte-stable for identical inputs and
``json.loads(render(x))`` round-trips.
"""

from __future__ import annotations

import json

from .oracle import SimulationReport, SimulationRun
from .strategy import SearchResult, SearchState, TreeLeaf


def render_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def result_to_json(result: SearchResult | None):
    """None while pending; {"floor": f} or {"floor": null} once resolved."""
    if result is None:
        return None
    return {"floor": result.floor}


def state_to_json(state: SearchState) -> dict:
    return {
        "floors": state.problem.floors,
        "balls": state.problem.balls,
        "low": state.low,
        "break_floor": state.break_floor,
        "balls_left": state.balls_left,
        "attempts_left": state.attempts_left,
        "history": [
            {"floor": floor, "outcome": outcome.value}
            for floor, outcome in state.history
        ],
        "status": state.status.value,
        "result": result_to_json(state.result),
    }


def run_to_json(hidden, run: SimulationRun) -> dict:
    return {
        "hidden": hidden,
        "result": result_to_json(run.result),
        "trials": run.trials,
        "breaks": run.breaks,
    }


def report_to_json(report: SimulationReport, budget: int) -> dict:
    return {
        "floors": report.problem.floors,
        "balls": report.problem.balls,
        "min_trials": budget,
        "worst_trials": report.worst_trials,
        "all_correct": report.all_correct,
        "outcomes": [run_to_json(h, r) for h, r in report.runs.items()],
    }


def tree_to_json(node) -> dict:
    """Nested dict mirror of the tree; leaves carry "result", internals "probe".

    Iterative so single-ball chains (depth == floors) cannot blow the
    recursion limit.
    """
    root: list = [None]
    stack = [(node, root, 0)]
    while stack:
        current, container, slot = stack.pop()
        if isinstance(current, TreeLeaf):
            rendered = {"result": current.result.floor}
        else:
            rendered = {"probe": current.probe, "on_broke": None, "on_survived": None}
            stack.append((current.on_broke, rendered, "on_broke"))
            stack.append((current.on_survived, rendered, "on_survived"))
        container[slot] = rendered
    return root[0]


def tree_to_dot(node) -> str:
    """DOT digraph with deterministic preorder node ids."""
    lines = ["digraph probe_tree {"]
    counter = 0
    stack = [(node, None, None)]
    while stack:
        current, parent_id, edge = stack.pop()
        node_id = f"n{counter}"
        counter += 1
        if isinstance(current, TreeLeaf):
            label = "none" if current.result.floor is None else f"L={current.result.floor}"
            lines.append(f'  {node_id} [label="{label}" shape=box];')
        else:
            lines.append(f'  {node_id} [label="probe {current.probe}"];')
            # push survived first so the broke branch comes out preorder-left
            stack.append((current.on_survived, node_id, "survived"))
            stack.append((current.on_broke, node_id, "broke"))
        if parent_id is not None:
            lines.append(f'  {parent_id} -> {node_id} [label="{edge}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def table_to_csv(table) -> str:
    r"""Coverage matrix as CSV with the "m\k" corner header."""
    header = "m\\k," + ",".join(str(k) for k in range(table.shape[1]))
    rows = [header]
    for m in range(table.shape[0]):
        rows.append(f"{m}," + ",".join(str(int(v)) for v in table[m]))
    return "\n".join(rows) + "\n"
