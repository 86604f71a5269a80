"""
Unit tests for reference spectra, error reports and their renderings.
"""
import csv
import io
import math

import numpy as np
import pytest

from matrixless.exceptions import LevelOutOfRangeError
from matrixless.expansion import GridSpec, precompute
from matrixless.harness import (
    FIGURE_HEADER,
    ReferenceCache,
    compare,
    convergence_order,
    figure_dump,
    format_table_csv,
    format_table_text,
    parity_diagnostic,
    reference_spectrum,
    table_sweep,
)
from matrixless.models import SweepResult
from matrixless.spectra import PrecisionSpec, all_eigs
from matrixless.symbols import SymbolPair


class TestCompare:
    """Tests for error reports of one spectrum."""

    def test_identical_spectra(self):
        """Should report zero errors for equal inputs."""
        values = np.linspace(0.1, 1.9, 10)
        report = compare(values, values, 2)
        assert report.max_error == 0.0
        assert report.normalized == 0.0
        assert report.n == 10

    def test_uniform_shift(self):
        """Should report the shift as every individual error."""
        reference = np.linspace(0.1, 1.9, 10)
        report = compare(reference + 1e-6, reference, 1)
        np.testing.assert_allclose(report.errors, 1e-6, rtol=1e-6)
        assert report.max_error == pytest.approx(1e-6, rel=1e-6)
        assert report.normalized == pytest.approx(11e-6, rel=1e-6)

    def test_normalizes_by_level(self):
        """Should multiply the maximum error by (n+1)^k."""
        reference = np.zeros(3)
        report = compare([0.0, 2e-4, 1e-4], reference, 3)
        assert report.normalized == pytest.approx(2e-4 * 64)

    def test_rejects_length_mismatch(self):
        """Should refuse spectra of different length."""
        with pytest.raises(ValueError):
            compare(np.zeros(4), np.zeros(5), 1)

    def test_records_oracle_digits(self):
        """Should carry the oracle precision into the report."""
        report = compare(np.ones(2), np.ones(2), 1, space="lambda", oracle_digits=40)
        assert report.oracle_digits == 40
        assert report.space == "lambda"


class TestConvergenceOrder:
    """Tests for the empirical convergence order."""

    def test_doubling_orders(self):
        """Should give log2 of the error ratio for m = 2n + 1."""
        assert convergence_order(8e-3, 255, 1e-3, 511) == pytest.approx(3.0)

    def test_general_orders(self):
        """Should use the ratio of n + 1 for arbitrary orders."""
        order = convergence_order(1.0, 99, 1.0 / 9.0, 299)
        assert order == pytest.approx(2.0)

    def test_vanishing_error(self):
        """Should return NaN when either error is zero."""
        assert math.isnan(convergence_order(0.0, 10, 1e-3, 21))
        assert math.isnan(convergence_order(1e-3, 10, 0.0, 21))


class TestParity:
    """Tests for the even/odd split of errors."""

    def test_uniform_errors(self):
        """Should give ratio 1 and no anomaly for equal errors."""
        report = compare(np.full(8, 1e-5), np.zeros(8), 1)
        diag = parity_diagnostic(report)
        assert diag.ratio == pytest.approx(1.0)
        assert not diag.anomaly

    def test_flags_alternating_errors(self):
        """Should flag even indices a thousand times worse than odd ones."""
        errors = np.tile([1e-9, 1e-6], 5)
        report = compare(errors, np.zeros(10), 2)
        diag = parity_diagnostic(report)
        assert diag.even_max == pytest.approx(1e-6)
        assert diag.odd_max == pytest.approx(1e-9)
        assert diag.ratio == pytest.approx(1000.0)
        assert diag.anomaly

    def test_custom_threshold(self):
        """Should compare against the given threshold."""
        errors = np.tile([1.0, 1.5], 3)
        report = compare(errors, np.zeros(6), 1)
        assert not parity_diagnostic(report).anomaly
        assert parity_diagnostic(report, threshold=1.2).anomaly

    def test_default_threshold(self):
        """Should flag a threefold split and leave a 1.5-fold one alone."""
        assert parity_diagnostic(compare(np.tile([1.0, 3.0], 4), np.zeros(8), 3)).anomaly
        assert not parity_diagnostic(compare(np.tile([1.0, 1.5], 4), np.zeros(8), 3)).anomaly

    def test_single_eigenvalue(self):
        """Should not flag n = 1, which has no even index."""
        report = compare([1.0], [0.0], 1)
        assert parity_diagnostic(report).ratio == 1.0

    def test_exact_odd_indices(self):
        """Should give an infinite ratio when one parity is exact."""
        report = compare([0.0, 1e-8, 0.0, 1e-8], np.zeros(4), 1)
        diag = parity_diagnostic(report)
        assert math.isinf(diag.ratio)
        assert diag.to_dict()["ratio"] is None
        assert diag.anomaly


class TestFigures:
    """Tests for figure data and table renderings."""

    def test_figure_rows(self):
        """Should write one header and n rows with theta = j pi / (n+1)."""
        report = compare([0.0, 1e-3, 0.0], [0.0, 0.0, 1e-2], 1)
        lines = figure_dump(report).split("\n")
        assert lines[0] == FIGURE_HEADER
        assert lines[1] == f"1,{math.pi / 4!r},-inf"
        assert lines[2].startswith("2,")
        assert float(lines[2].split(",")[2]) == pytest.approx(-3.0)
        assert float(lines[3].split(",")[2]) == pytest.approx(-2.0)
        assert lines[-1] == ""

    def test_single_row(self):
        """Should handle n = 1."""
        text = figure_dump(compare([1.0], [1.1], 1))
        assert text.count("\n") == 2
        assert "\r" not in text

    def test_figure_reads_as_csv(self):
        """Should parse with the csv module into a header and n rows."""
        report = compare(np.full(5, 1e-4), np.zeros(5), 2)
        rows = list(csv.reader(io.StringIO(figure_dump(report))))
        assert rows[0] == ["j", "theta", "log10_err"]
        assert len(rows) == 6
        assert [int(r[0]) for r in rows[1:]] == [1, 2, 3, 4, 5]
        assert float(rows[3][2]) == pytest.approx(-4.0)

    @pytest.fixture
    def sweep(self):
        result = SweepResult(orders=[10, 21], levels=[1, 2], space="s")
        for n in (10, 21):
            for k in (1, 2):
                result.reports[(n, k)] = compare(np.full(n, 10.0 ** -(k + 2)), np.zeros(n), k)
        result.convergence[(10, 1)] = 1.0
        result.convergence[(10, 2)] = math.nan
        return result

    def test_csv_is_level_major(self, sweep):
        """Should list every order of level 1 before level 2."""
        lines = format_table_csv(sweep).strip().split("\n")
        assert lines[0] == "n,k,max_err,normalized_err,oracle_digits"
        assert [tuple(line.split(",")[:2]) for line in lines[1:]] == [
            ("10", "1"), ("21", "1"), ("10", "2"), ("21", "2"),
        ]
        assert float(lines[1].split(",")[2]) == 1e-3

    def test_text_table_columns(self, sweep):
        """Should align columns and print '-' for a missing order."""
        lines = format_table_text(sweep).rstrip("\n").split("\n")
        assert lines[0].split() == [
            "n", "k", "max_err", "normalized_err", "oracle_digits", "conv_order",
        ]
        assert set(lines[1].replace(" ", "")) == {"-"}
        assert lines[2].split()[-1] == "1.000"
        assert lines[4].split()[-1] == "-"
        assert len({len(line) for line in lines[:6]}) == 1

    def test_text_table_lists_anomalies(self, sweep):
        """Should append one line per parity anomaly."""
        report = compare(np.tile([1e-9, 1e-6], 5), np.zeros(10), 1)
        sweep.parity[(10, 1)] = parity_diagnostic(report)
        assert "parity anomaly at n=10, k=1" in format_table_text(sweep)


class TestReferenceCache:
    """Tests for the reference spectrum cache."""

    def test_round_trip_is_exact(self, example2, cache_dir):
        """Should return bit-identical values from the cache."""
        cache = ReferenceCache(cache_dir)
        first = reference_spectrum(example2, 24, cache=cache)
        assert len(list(cache_dir.iterdir())) == 1
        second = reference_spectrum(example2, 24, cache=cache)
        np.testing.assert_array_equal(first, second)

    def test_extended_round_trip(self, example1, extended, cache_dir):
        """Should keep every digit of an extended spectrum."""
        cache = ReferenceCache(cache_dir)
        first = reference_spectrum(example1, 10, extended, cache=cache)
        second = reference_spectrum(example1, 10, extended, cache=cache)
        assert list(first) == list(second)
        assert "40-digit" in next(cache_dir.iterdir()).name

    def test_miss_on_other_tolerance(self, example1, cache_dir):
        """Should not reuse a spectrum computed to another width."""
        cache = ReferenceCache(cache_dir)
        prec = PrecisionSpec.double()
        reference_spectrum(example1, 12, prec, cache=cache, tol=1e-6)
        assert cache.load(example1, 12, prec, 1e-6) is not None
        assert cache.load(example1, 12, prec, 1e-13) is None

    def test_ignores_unreadable_file(self, example1, cache_dir):
        """Should recompute when the cached file is not JSON."""
        cache = ReferenceCache(cache_dir)
        prec = PrecisionSpec.double()
        cache.path(example1, 8, prec).write_text("{broken", encoding="utf-8")
        values = reference_spectrum(example1, 8, prec, cache=cache)
        np.testing.assert_allclose(values, all_eigs(example1, 8), atol=1e-13)

    def test_disabled_cache_writes_nothing(self, example1, cache_dir):
        """Should neither read nor write when disabled."""
        cache = ReferenceCache(cache_dir, enabled=False)
        reference_spectrum(example1, 8, cache=cache)
        assert not list(cache_dir.iterdir())

    def test_constant_ratio(self):
        """Should return the constant for l = 2g."""
        pair = SymbolPair.from_coefficients([6, 4], [3, 2])
        np.testing.assert_array_equal(reference_spectrum(pair, 5), [2.0] * 5)


class TestTableSweep:
    """Tests for sweeps over orders and levels."""

    @pytest.fixture(scope="class")
    def table(self, example1):
        return precompute(example1, GridSpec(16, 2), prec=PrecisionSpec.double())

    def test_fills_every_cell(self, table, example1, cache_dir):
        """Should report each (n, k) and one convergence order per consecutive pair."""
        sweep = table_sweep(table, example1, [30, 61], [1, 2], cache=ReferenceCache(cache_dir))
        assert len(sweep) == 4
        assert set(sweep.convergence) == {(30, 1), (30, 2)}
        assert set(sweep.parity) == set(sweep.reports)
        assert len(list(cache_dir.iterdir())) == 2

    def test_first_level_converges_linearly(self, table, example1):
        """Should measure an order close to 1 at k = 1."""
        sweep = table_sweep(table, example1, [60, 121], [1])
        assert sweep.convergence[(60, 1)] == pytest.approx(1.0, abs=0.3)
        assert sweep[(121, 1)].normalized == pytest.approx(0.754, abs=0.05)

    def test_empty_orders(self, table, example1):
        """Should return an empty result for an empty sweep."""
        sweep = table_sweep(table, example1, [], [1, 2])
        assert sweep.is_empty()
        assert format_table_csv(sweep) == "n,k,max_err,normalized_err,oracle_digits\n"

    def test_rejects_level_beyond_table(self, table, example1):
        """Should check every level before computing anything."""
        with pytest.raises(LevelOutOfRangeError):
            table_sweep(table, example1, [20], [1, 3])
