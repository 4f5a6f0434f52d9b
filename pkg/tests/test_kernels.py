"""Backend parity: the numba kernels and the numpy fallbacks must agree."""

import numpy as np
import pytest

from probe_budget import kernels
from probe_budget.errors import CoverageOverflowError, InfeasibleError

needs_numba = pytest.mark.skipif(
    not kernels.NUMBA_AVAILABLE, reason="numba not installed"
)


@pytest.fixture
def each_backend():
    """Run the wrapped body once per available backend."""
    available = ["numpy"] + (["numba"] if kernels.NUMBA_AVAILABLE else [])
    previous = kernels.active_backend()

    def runner(fn):
        for name in available:
            kernels.use_backend(name)
            fn(name)

    yield runner
    kernels.use_backend(previous)


class TestBackendSelection:
    def test_active_backend_is_known(self):
        assert kernels.active_backend() in kernels.BACKENDS

    def test_use_backend_round_trip(self):
        previous = kernels.use_backend("numpy")
        try:
            assert kernels.active_backend() == "numpy"
        finally:
            kernels.use_backend(previous)

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")

    def test_env_selection(self, monkeypatch):
        monkeypatch.setenv("PROBE_BUDGET_BACKEND", "numpy")
        assert kernels._backend_from_env() == "numpy"
        monkeypatch.setenv("PROBE_BUDGET_BACKEND", "auto")
        assert kernels._backend_from_env() in kernels.BACKENDS
        monkeypatch.setenv("PROBE_BUDGET_BACKEND", "cuda")
        with pytest.raises(RuntimeError):
            kernels._backend_from_env()


@needs_numba
class TestParity:
    def test_coverage_table(self):
        got_nb = kernels.coverage_table_nb(40, 20)
        got_np = kernels.coverage_table_np(40, 20)
        assert np.array_equal(got_nb[0], got_np[0])
        assert got_nb[1:] == got_np[1:] == (-1, -1)

    def test_coverage_table_overflow_position(self):
        table_nb, m_nb, k_nb = kernels.coverage_table_nb(128, 128)
        table_np, m_np, k_np = kernels.coverage_table_np(128, 128)
        assert (m_nb, k_nb) == (m_np, k_np)
        assert m_nb > 0

    def test_min_trials_sweep(self):
        floors = np.arange(0, 50_000, dtype=np.int64)
        for balls in (1, 2, 3, 5, 9):
            assert np.array_equal(
                kernels.min_trials_sweep_nb(floors, balls),
                kernels.min_trials_sweep_np(floors, balls),
            )

    def test_two_ball_sweep(self):
        floors = np.arange(0, 100_000, dtype=np.int64)
        assert np.array_equal(
            kernels.two_ball_sweep_nb(floors), kernels.two_ball_sweep_np(floors)
        )

    def test_two_ball_sweep_large_values(self):
        floors = np.array(
            [0, 1, kernels.MAX_TWO_BALL_FLOORS, kernels.MAX_TWO_BALL_FLOORS - 7],
            dtype=np.int64,
        )
        assert np.array_equal(
            kernels.two_ball_sweep_nb(floors), kernels.two_ball_sweep_np(floors)
        )

    def test_oracle_fill(self):
        assert np.array_equal(
            kernels.oracle_fill_nb(120, 7), kernels.oracle_fill_np(120, 7)
        )


class TestWrappers:
    def test_results_identical_across_backends(self, each_backend):
        seen = {}

        def capture(name):
            seen[name] = (
                kernels.coverage_table(30, 8).copy(),
                kernels.min_trials_sweep(np.arange(2000), 4).copy(),
                kernels.two_ball_sweep(np.arange(2000)).copy(),
                kernels.oracle_fill(50, 5).copy(),
            )

        each_backend(capture)
        values = list(seen.values())
        for other in values[1:]:
            for a, b in zip(values[0], other):
                assert np.array_equal(a, b)

    def test_overflow_raises_on_both_backends(self, each_backend):
        def check(name):
            with pytest.raises(CoverageOverflowError):
                kernels.coverage_table(70, 70)

        each_backend(check)

    def test_sweep_validation(self):
        with pytest.raises(ValueError):
            kernels.min_trials_sweep(np.array([-1]), 2)
        with pytest.raises(ValueError):
            kernels.min_trials_sweep(np.array([[1]]), 2)
        with pytest.raises(InfeasibleError):
            kernels.min_trials_sweep(np.array([3]), 0)
        with pytest.raises(ValueError):
            kernels.min_trials_sweep(np.array([kernels.MAX_SWEEP_FLOORS + 1]), 2)
        with pytest.raises(ValueError):
            kernels.two_ball_sweep(np.array([kernels.MAX_TWO_BALL_FLOORS + 1]))

    def test_table_validation(self):
        with pytest.raises(ValueError):
            kernels.coverage_table(-1, 3)
        with pytest.raises(ValueError):
            kernels.oracle_fill(3, -1)

    def test_oracle_fill_column_zero_placeholders(self):
        table = kernels.oracle_fill(6, 3)
        assert int(table[0, 0]) == 0
        assert all(int(v) == -1 for v in table[1:, 0])
