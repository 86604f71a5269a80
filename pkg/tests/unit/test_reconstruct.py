"""
Unit tests for the precompute and approximation phases.

Tests:
- Reconstruction from hand-made tables
- Table/symbol binding
- Precompute on small grids in double and extended precision
"""
import math

import numpy as np
import pytest

from matrixless.exceptions import (
    DigestMismatchError,
    LevelOutOfRangeError,
    NotMonotoneError,
    OrderTooSmallError,
    TableFormatError,
)
from matrixless.expansion import (
    ExpansionSpace,
    ExpansionTable,
    GridSpec,
    approx_eigs,
    estimate_error_constant,
    precompute,
    reconstruct,
)
from matrixless.spectra import PrecisionSpec, all_eigs
from matrixless.symbols import example_pair


def constant_table(pair, grid, values, space="s"):
    """Table whose level k holds the constant values[k-1] at every node."""
    coeffs = tuple(tuple(repr(float(v)) for _ in range(grid.n_1 + 2)) for v in values)
    return ExpansionTable(
        space=space,
        grid=grid,
        coeffs=coeffs,
        l=tuple(pair.l.to_text()),
        g=tuple(pair.g.to_text()),
        digest=pair.digest(),
        precision=PrecisionSpec.double(),
    )


class TestReconstruct:
    """Tests for eigenvalue reconstruction from a table."""

    @pytest.fixture
    def grid(self):
        return GridSpec(10, 3)

    def test_level_one_samples_f(self, example1, grid):
        """Should return f(theta_{j,n}) at k = 1."""
        table = constant_table(example1, grid, [5.0, 5.0, 5.0])
        n = 50
        theta = np.arange(1, n + 1) * math.pi / (n + 1)
        np.testing.assert_allclose(approx_eigs(table, example1, n, 1), 1 - np.cos(theta), atol=1e-15)

    def test_s_space_shifts_argument(self, example1, grid):
        """Should evaluate f(theta + rho_1 h) at k = 2."""
        table = constant_table(example1, grid, [0.5, 7.0, 7.0])
        n = 40
        h = 1.0 / (n + 1)
        theta = np.arange(1, n + 1) * math.pi * h
        expected = 1 - np.cos(theta + 0.5 * h)
        np.testing.assert_allclose(approx_eigs(table, example1, n, 2), expected, atol=1e-14)

    def test_lambda_space_adds_corrections(self, example1, grid):
        """Should add c_1 h + c_2 h^2 at k = 3."""
        table = constant_table(example1, grid, [1.0, -2.0, 9.0], space="lambda")
        n = 40
        h = 1.0 / (n + 1)
        theta = np.arange(1, n + 1) * math.pi * h
        expected = 1 - np.cos(theta) + h - 2.0 * h * h
        result = reconstruct(table, example1, n, 3)
        np.testing.assert_allclose(result.values, expected, atol=1e-14)
        assert result.space == ExpansionSpace.LAMBDA.value

    def test_counts_clamped_arguments(self, example1, grid):
        """Should clamp arguments that leave [0, pi] and report how many."""
        table = constant_table(example1, grid, [-1000.0, 0.0, 0.0])
        result = reconstruct(table, example1, 20, 2)
        assert result.clamped > 0
        assert np.all(result.values >= 0.0)
        assert np.all(np.isfinite(result.values))

    def test_no_clamping_for_small_corrections(self, example1, grid):
        """Should leave in-range arguments untouched."""
        table = constant_table(example1, grid, [0.1, 0.1, 0.1])
        result = reconstruct(table, example1, 300, 3)
        assert result.clamped == 0
        assert result.inversions == 0
        assert result.n == 300

    def test_chunking_does_not_change_values(self, example1):
        """Should give identical values for any chunk size."""
        grid = GridSpec(10, 3)
        rows = [np.sin(np.arange(12) * (k + 1)) for k in range(3)]
        coeffs = tuple(tuple(repr(float(v)) for v in row) for row in rows)
        table = ExpansionTable(
            space="s", grid=grid, coeffs=coeffs,
            l=tuple(example1.l.to_text()), g=tuple(example1.g.to_text()),
            digest=example1.digest(), precision=PrecisionSpec.double(),
        )
        full = reconstruct(table, example1, 1000, 3).values
        chunked = reconstruct(table, example1, 1000, 3, chunk=37).values
        np.testing.assert_allclose(full, chunked, rtol=1e-15, atol=1e-15)

    def test_rejects_other_symbols(self, example1, example2, grid):
        """Should refuse a table computed for another pair."""
        table = constant_table(example1, grid, [0.0, 0.0, 0.0])
        with pytest.raises(DigestMismatchError):
            reconstruct(table, example2, 10, 1)

    def test_rejects_level_beyond_table(self, example1, grid):
        """Should refuse k > K and k < 1."""
        table = constant_table(example1, grid, [0.0, 0.0, 0.0])
        with pytest.raises(LevelOutOfRangeError):
            reconstruct(table, example1, 10, 4)
        with pytest.raises(LevelOutOfRangeError):
            reconstruct(table, example1, 10, 0)

    def test_rejects_empty_order(self, example1, grid):
        """Should refuse n < 1."""
        table = constant_table(example1, grid, [0.0, 0.0, 0.0])
        with pytest.raises(OrderTooSmallError):
            reconstruct(table, example1, 0, 1)

    def test_rejects_unfilled_endpoints(self, example1, grid):
        """Should refuse corrections from a table whose endpoints are missing."""
        row = (None,) + ("0.0",) * grid.n_1 + (None,)
        table = ExpansionTable(
            space="s", grid=grid, coeffs=(row, row, row),
            l=tuple(example1.l.to_text()), g=tuple(example1.g.to_text()),
            digest=example1.digest(), precision=PrecisionSpec.double(),
        )
        with pytest.raises(TableFormatError):
            reconstruct(table, example1, 10, 2)


class TestPrecompute:
    """Tests for the precompute phase on small grids."""

    @pytest.fixture(scope="class")
    def table(self, example1):
        return precompute(example1, GridSpec(20, 3), prec=PrecisionSpec.double())

    def test_table_shape(self, table):
        """Should fill K rows of n_1 + 2 values, endpoints included."""
        assert table.K == 3
        assert table.n_1 == 20
        assert table.endpoints_filled
        assert np.isfinite(table.values).all()

    def test_records_provenance(self, table):
        """Should record the orders and the diagnostics counters."""
        assert table.provenance["orders"] == [20, 41, 83]
        assert "avram_parter_violations" in table.provenance
        assert table.provenance["domain_violations"] == 0

    def test_higher_level_is_more_accurate(self, table, example1):
        """Should reduce the maximum error from k = 1 to k = 3."""
        n = 60
        exact = all_eigs(example1, n)
        errors = [np.abs(np.sort(approx_eigs(table, example1, n, k)) - exact).max() for k in (1, 2, 3)]
        assert errors[1] < errors[0]
        assert errors[2] < errors[1]

    def test_single_level_table(self, example1):
        """Should produce one coefficient row when K = 1."""
        table = precompute(example1, GridSpec(8, 1), prec=PrecisionSpec.double())
        assert len(table.coeffs) == 1
        theta = np.arange(1, 9) * math.pi / 9
        lam = all_eigs(example1, 8)
        s = np.arccos(1 - lam)
        np.testing.assert_allclose(table.level(1)[1:9], (s - theta) * 9, atol=1e-6)

    def test_lambda_space(self, example1):
        """Should expand the eigenvalues themselves in lambda-space."""
        table = precompute(example1, GridSpec(8, 1), space="lambda", prec=PrecisionSpec.double())
        theta = np.arange(1, 9) * math.pi / 9
        lam = all_eigs(example1, 8)
        np.testing.assert_allclose(table.level(1)[1:9], (lam - (1 - np.cos(theta))) * 9, atol=1e-9)
        assert table.space is ExpansionSpace.LAMBDA

    def test_is_deterministic(self, example2):
        """Should produce identical documents for identical inputs."""
        grid = GridSpec(8, 2)
        first = precompute(example2, grid, prec=PrecisionSpec.double())
        second = precompute(example2, grid, prec=PrecisionSpec.double(), jobs=2)
        assert first.to_document() == second.to_document()

    def test_extended_precision(self, example1, extended):
        """Should agree with the double-precision table in the leading coefficient."""
        grid = GridSpec(8, 2)
        double = precompute(example1, grid, prec=PrecisionSpec.double())
        wide = precompute(example1, grid, prec=extended)
        assert wide.precision == extended
        np.testing.assert_allclose(wide.level(1), double.level(1), rtol=1e-6, atol=1e-8)
        assert len(wide.coeffs[0][5]) > 25

    def test_deep_double_grid(self, example1):
        """Should finish a four-level double precompute whose finest order is 327."""
        table = precompute(example1, GridSpec(40, 4), prec=PrecisionSpec.double())
        assert table.provenance["orders"] == [40, 81, 163, 327]
        assert np.isfinite(table.values).all()

    def test_requires_certified_pair(self):
        """Should refuse a pair that was never certified."""
        with pytest.raises(NotMonotoneError):
            precompute(example_pair(1), GridSpec(8, 1))


class TestErrorConstant:
    """Tests for the empirical error constant."""

    def test_budget_per_order(self, example1):
        """Should record (n+1)^k eps for each order and their maximum."""
        table = precompute(example1, GridSpec(10, 2), prec=PrecisionSpec.double())
        budget = estimate_error_constant(table, example1, [40, 81], 1)
        assert set(budget.per_order[1]) == {40, 81}
        assert budget.c_hat[1] == max(budget.per_order[1].values())
        assert budget.spread(1) < 0.5
