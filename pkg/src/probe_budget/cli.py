"""Command-line surface.

Exit codes: 0 success, 1 infeasible instance or 64-bit overflow or tree
guard exceeded, 2 bad arguments, 3 verification mismatch, 130 interrupted
while advising.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import output
from .coverage import (
    coverage_cached,
    coverage_table,
    min_trials,
    probe_schedule,
)
from .errors import (
    CoverageOverflowError,
    InfeasibleError,
    ProbeBudgetError,
    TreeSizeError,
)
from .oracle import Mismatch, cross_check, simulate, simulate_all
from .strategy import (
    ProbeOutcome,
    SessionStatus,
    apply_outcome,
    build_tree,
    current_result,
    next_probe,
    start_session,
)


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probe-budget",
        description=(
            "Find the lowest breaking floor of an n-floor building with k "
            "breakable balls in the provably minimal worst-case number of "
            "trials."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="minimal trial count and first probe")
    solve.add_argument("--floors", type=_nonneg, required=True)
    solve.add_argument("--balls", type=_nonneg, required=True)
    solve.add_argument("--format", choices=("text", "json"), default="text")
    solve.set_defaults(func=cmd_solve)

    table = sub.add_parser("table", help="coverage value matrix")
    table.add_argument("--max-trials", type=_nonneg, required=True)
    table.add_argument("--max-balls", type=_nonneg, required=True)
    table.add_argument("--format", choices=("text", "csv", "json"), default="text")
    table.set_defaults(func=cmd_table)

    schedule = sub.add_parser("schedule", help="no-break probe path")
    schedule.add_argument("--floors", type=_nonneg, required=True)
    schedule.add_argument("--balls", type=_nonneg, required=True)
    schedule.add_argument("--format", choices=("text", "json"), default="text")
    schedule.set_defaults(func=cmd_schedule)

    tree = sub.add_parser("tree", help="full decision tree (dot or json)")
    tree.add_argument("--floors", type=_nonneg, required=True)
    tree.add_argument("--balls", type=_nonneg, required=True)
    tree.add_argument("--format", choices=("dot", "json"), default="dot")
    tree.set_defaults(func=cmd_tree)

    sim = sub.add_parser("simulate", help="play the strategy against hidden outcomes")
    sim.add_argument("--floors", type=_nonneg, required=True)
    sim.add_argument("--balls", type=_nonneg, required=True)
    sim.add_argument(
        "--hidden",
        required=True,
        help='breaking floor as an integer, "none" (nothing breaks), or "all"',
    )
    sim.add_argument("--format", choices=("text", "json"), default="text")
    sim.set_defaults(func=cmd_simulate)

    verify = sub.add_parser("verify", help="cross-check against the DP oracle")
    verify.add_argument("--max-floors", type=_positive, required=True)
    verify.add_argument("--max-balls", type=_positive, required=True)
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.set_defaults(func=cmd_verify)

    advise = sub.add_parser("advise", help="interactive advisor for a real test run")
    advise.add_argument("--floors", type=_nonneg, required=True)
    advise.add_argument("--balls", type=_nonneg, required=True)
    advise.set_defaults(func=cmd_advise)

    serve = sub.add_parser("serve", help="HTTP/JSON session service + advisor UI")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=_nonneg, default=8765)
    serve.add_argument("--static-dir", default=None)
    serve.add_argument(
        "--idle-timeout",
        type=float,
        default=3600.0,
        help="seconds an untouched session survives (default 1 hour)",
    )
    serve.set_defaults(func=cmd_serve)

    return parser


def cmd_solve(args) -> int:
    schedule = probe_schedule(args.floors, args.balls)
    payload = {
        "floors": args.floors,
        "balls": args.balls,
        "min_trials": schedule.trials,
        "first_probe": schedule.probes[0] if schedule.probes else None,
    }
    if args.format == "json":
        sys.stdout.write(output.render_json(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return 0


def cmd_table(args) -> int:
    table = coverage_table(args.max_trials, args.max_balls)
    if args.format == "csv":
        sys.stdout.write(output.table_to_csv(table))
    elif args.format == "json":
        payload = {
            "max_trials": args.max_trials,
            "max_balls": args.max_balls,
            "coverage": [[int(v) for v in row] for row in table],
        }
        sys.stdout.write(output.render_json(payload))
    else:
        width = max(5, len(str(int(table.max()))) + 1)
        print("m\\k".ljust(6) + "".join(str(k).rjust(width) for k in range(table.shape[1])))
        for m in range(table.shape[0]):
            print(str(m).ljust(6) + "".join(str(int(v)).rjust(width) for v in table[m]))
    return 0


def cmd_schedule(args) -> int:
    schedule = probe_schedule(args.floors, args.balls)
    if args.format == "json":
        payload = {
            "floors": args.floors,
            "balls": args.balls,
            "min_trials": schedule.trials,
            "probes": list(schedule.probes),
        }
        sys.stdout.write(output.render_json(payload))
    else:
        print(f"min_trials: {schedule.trials}")
        print("probes: " + " ".join(str(p) for p in schedule.probes))
    return 0


def cmd_tree(args) -> int:
    guard = os.environ.get("PROBE_BUDGET_TREE_GUARD")
    if guard is not None:
        try:
            max_leaves = int(guard)
        except ValueError:
            print(f"invalid PROBE_BUDGET_TREE_GUARD: {guard!r}", file=sys.stderr)
            return 2
    else:
        max_leaves = None
    tree = build_tree(args.floors, args.balls, max_leaves=max_leaves)
    if args.format == "json":
        sys.stdout.write(output.render_json(output.tree_to_json(tree)))
    else:
        sys.stdout.write(output.tree_to_dot(tree))
    return 0


def _parse_hidden(text: str, floors: int):
    token = text.strip().lower()
    if token in ("none", "all"):
        return token
    try:
        hidden = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'--hidden must be an integer, "none" or "all", got {text!r}'
        ) from None
    if not 1 <= hidden <= floors:
        raise argparse.ArgumentTypeError(
            f"--hidden must lie in [1, {floors}], got {hidden}"
        )
    return hidden


def cmd_simulate(args) -> int:
    try:
        hidden = _parse_hidden(args.hidden, args.floors)
    except argparse.ArgumentTypeError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    budget = min_trials(args.floors, args.balls)
    if hidden == "all":
        report = simulate_all(args.floors, args.balls)
        payload = output.report_to_json(report, budget)
        if args.format == "json":
            sys.stdout.write(output.render_json(payload))
        else:
            print(f"floors: {args.floors}")
            print(f"balls: {args.balls}")
            print(f"min_trials: {budget}")
            print(f"worst_trials: {report.worst_trials}")
            print(f"all_correct: {str(report.all_correct).lower()}")
        if not report.all_correct or report.worst_trials != budget:
            print("verification failure", file=sys.stderr)
            return 3
        return 0

    hidden_value = None if hidden == "none" else hidden
    run = simulate(args.floors, args.balls, hidden_value)
    payload = output.run_to_json(hidden_value, run)
    if args.format == "json":
        sys.stdout.write(output.render_json(payload))
    else:
        floor = run.result.floor
        print("result: " + ("no floor breaks" if floor is None else f"L={floor}"))
        print(f"trials: {run.trials}")
        print(f"breaks: {run.breaks}")
    if run.result.floor != hidden_value or run.trials > budget:
        print("verification failure", file=sys.stderr)
        return 3
    return 0


def _verify_invariants(max_floors: int, max_balls: int) -> list[Mismatch]:
    """Bracketing plus the closed-form row identities, as mismatch records."""
    found: list[Mismatch] = []
    for balls in range(1, max_balls + 1):
        for floors in range(1, max_floors + 1):
            m = min_trials(floors, balls)
            if not coverage_cached(m - 1, balls) < floors <= coverage_cached(m, balls):
                found.append(Mismatch("bracketing", floors, balls, m, m))
    for m in range(0, min(max_floors, 63) + 1):
        if coverage_cached(m, 1) != m:
            found.append(Mismatch("identity:k=1", m, 1, m, coverage_cached(m, 1)))
        if coverage_cached(m, 2) != m * (m + 1) // 2:
            found.append(
                Mismatch("identity:k=2", m, 2, m * (m + 1) // 2, coverage_cached(m, 2))
            )
        if coverage_cached(m, m) != 2**m - 1:
            found.append(Mismatch("identity:k=m", m, m, 2**m - 1, coverage_cached(m, m)))
    return found


def cmd_verify(args) -> int:
    mismatches = cross_check(args.max_floors, args.max_balls)
    mismatches += _verify_invariants(args.max_floors, args.max_balls)
    summary = (
        f"checked floors 1..{args.max_floors} x balls 1..{args.max_balls}: "
        f"{len(mismatches)} mismatches"
    )
    if args.format == "json":
        payload = {
            "max_floors": args.max_floors,
            "max_balls": args.max_balls,
            "mismatches": [
                {
                    "check": m.check,
                    "floors": m.floors,
                    "balls": m.balls,
                    "expected": m.expected,
                    "actual": m.actual,
                }
                for m in mismatches
            ],
        }
        sys.stdout.write(output.render_json(payload))
    else:
        for m in mismatches:
            print(
                f"MISMATCH {m.check} at floors={m.floors} balls={m.balls}: "
                f"expected {m.expected}, got {m.actual}"
            )
        print(summary)
    return 3 if mismatches else 0


def cmd_advise(args) -> int:
    state = start_session(args.floors, args.balls)
    budget = state.attempts_left
    while state.status is SessionStatus.ACTIVE:
        floor = next_probe(state)
        attempt = len(state.history) + 1
        print(
            f"probe floor {floor}  [attempt {attempt}/{budget}, "
            f"balls left {state.balls_left}, "
            f"candidates {state.low}-{state.unknown_top}]"
        )
        try:
            answer = input("> ").strip().lower()
        except EOFError:
            print()
            return 130
        if answer in ("b", "broke"):
            apply_outcome(state, floor, ProbeOutcome.BROKE)
        elif answer in ("s", "survived"):
            apply_outcome(state, floor, ProbeOutcome.SURVIVED)
        elif answer in ("q", "quit"):
            print("aborted")
            return 0
        else:
            print("unrecognized input: enter b/broke, s/survived, or q")
    result = current_result(state)
    if result.floor is None:
        print("no floor breaks")
    else:
        print(f"lowest breaking floor: {result.floor}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve_forever

    serve_forever(
        host=args.host,
        port=args.port,
        static_dir=args.static_dir,
        idle_timeout=args.idle_timeout,
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (CoverageOverflowError, TreeSizeError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ProbeBudgetError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
