"""
Wall-clock behaviour of the approximation phase.
"""
import time

import pytest

from matrixless.expansion import GridSpec, precompute, reconstruct
from matrixless.spectra import PrecisionSpec

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def table(example1):
    return precompute(example1, GridSpec(40, 4), prec=PrecisionSpec.double())


def best_time(table, pair, n, k, repeats=3):
    """Fastest of a few runs, in seconds."""
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        reconstruct(table, pair, n, k)
        timings.append(time.perf_counter() - start)
    return min(timings)


class TestLinearScaling:
    """Tests for O(n) approximation cost."""

    def test_doubling_n_at_most_doubles_time(self, table, example1):
        """Should take at most 2.5 times as long for n = 2e6 as for n = 1e6."""
        reconstruct(table, example1, 10_000, 3)
        small = best_time(table, example1, 1_000_000, 3)
        large = best_time(table, example1, 2_000_000, 3)
        assert large <= 2.5 * small

    def test_reports_elapsed_time(self, table, example1):
        """Should record the wall-clock of the run in the result."""
        result = reconstruct(table, example1, 100_000, 4)
        assert result.elapsed > 0.0
        assert result.values.size == 100_000
