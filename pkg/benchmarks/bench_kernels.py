#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Each kernel runs on a representative hot workload; the numba side is
warmed first so JIT compilation is not billed to the measurement.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from probe_budget import kernels


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not kernels.NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy fallback can run")
        return 1

    kernels.warmup()

    million = np.arange(0, 1_000_001, dtype=np.int64)
    cases = [
        (
            "coverage_table(3000, 5)",
            kernels.coverage_table_nb,
            kernels.coverage_table_np,
            (3000, 5),
        ),
        (
            "min_trials_sweep(1e6 floors, k=2)",
            kernels.min_trials_sweep_nb,
            kernels.min_trials_sweep_np,
            (million, 2),
        ),
        (
            "min_trials_sweep(1e6 floors, k=4)",
            kernels.min_trials_sweep_nb,
            kernels.min_trials_sweep_np,
            (million, 4),
        ),
        (
            "two_ball_sweep(1e6 floors)",
            kernels.two_ball_sweep_nb,
            kernels.two_ball_sweep_np,
            (million,),
        ),
        (
            "oracle_fill(1500, 8)",
            kernels.oracle_fill_nb,
            kernels.oracle_fill_np,
            (1500, 8),
        ),
    ]

    name_width = max(len(name) for name, *_ in cases)
    print(f"{'kernel'.ljust(name_width)}  {'numba':>10}  {'numpy':>10}  {'ratio':>7}")
    for name, nb_fn, np_fn, call_args in cases:
        t_nb = best_of(args.repeats, nb_fn, *call_args)
        t_np = best_of(args.repeats, np_fn, *call_args)
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(
            f"{name.ljust(name_width)}  {t_nb * 1e3:>8.2f}ms  "
            f"{t_np * 1e3:>8.2f}ms  {ratio:>6.2f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
