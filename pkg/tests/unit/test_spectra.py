"""
Unit tests for banded Toeplitz pencils and the inertia-bisection eigensolver.
"""
from decimal import Decimal, localcontext
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy.linalg import cholesky, eigvalsh, solve_triangular

from matrixless.exceptions import OrderTooSmallError, PivotBreakdownError, PrecisionError
from matrixless.spectra import (
    PrecisionMode,
    PrecisionSpec,
    ToeplitzPencil,
    all_eigs,
    build_toeplitz,
    charpoly_pencil_roots,
    dense_pencil_eigs,
    eig_by_index,
    eigs_by_indices,
    inertia_count,
    spectral_bounds,
)
from matrixless.spectra.eigensolver import _bisect
from matrixless.symbols import CosinePoly, SymbolPair, certify, example_pair
from matrixless.utils import numeric


class AlwaysBrokenPencil:
    """Pencil whose factorization breaks down at every shift."""

    ctx = mpmath.fp
    n = 1

    def __init__(self):
        self.calls = 0

    def negative_pivots(self, shifts):
        self.calls += 1
        shifts = np.atleast_1d(shifts)
        return np.zeros(shifts.shape, dtype=np.int64), np.ones(shifts.shape, dtype=bool)


class TestBuildToeplitz:
    """Tests for banded Toeplitz storage."""

    def test_example2_g_band(self):
        """Should halve the cosine coefficients of Example 2's g."""
        g = CosinePoly.from_coefficients([1208, 1191, 120, 1])
        t = build_toeplitz(g, 10)
        assert t.diag_values == (Fraction(1208), Fraction(1191, 2), Fraction(60), Fraction(1, 2))
        assert t.band == 3

    def test_dense_is_symmetric_toeplitz(self):
        """Should place a_{|i-j|} at entry (i, j)."""
        g = CosinePoly.from_coefficients([3, 2])
        dense = build_toeplitz(g, 4).to_dense()
        expected = np.array([
            [3, 1, 0, 0],
            [1, 3, 1, 0],
            [0, 1, 3, 1],
            [0, 0, 1, 3],
        ], dtype=float)
        np.testing.assert_array_equal(dense, expected)

    def test_entries_match_fourier_coefficients(self):
        """Should agree with the Fourier coefficients of the symbol."""
        l = CosinePoly.from_coefficients(["17.5", -12, -6, 0, "0.5"])
        n = 9
        dense = build_toeplitz(l, n).to_dense()
        coeffs = l.fourier_coeffs(n)
        for i in range(n):
            for j in range(n):
                assert dense[i, j] == coeffs[n - 1 + (i - j)]

    def test_rejects_small_order(self):
        """Should refuse n <= degree unless truncation is requested."""
        g = CosinePoly.from_coefficients([1208, 1191, 120, 1])
        with pytest.raises(OrderTooSmallError):
            build_toeplitz(g, 3)
        assert build_toeplitz(g, 3, truncate=True).band == 2


class TestPrecisionSpec:
    """Tests for precision selection."""

    def test_from_digits_selects_mode(self):
        """Should select doubles up to 16 digits and extended from 20."""
        assert PrecisionSpec.from_digits(16).mode is PrecisionMode.DOUBLE
        assert PrecisionSpec.from_digits(60) == PrecisionSpec.extended(60)

    def test_rejects_gap_digits(self):
        """Should refuse 17..19 digits."""
        with pytest.raises(PrecisionError):
            PrecisionSpec.from_digits(18)

    def test_rejects_short_extended(self):
        """Should refuse extended precision below 20 digits."""
        with pytest.raises(PrecisionError):
            PrecisionSpec.extended(12)

    def test_extended_tolerance_scales_with_span(self):
        """Should use (M_f - m_f) 10^-(digits-8) as the extended width."""
        assert PrecisionSpec.extended(40).eig_tol(Fraction(2)) == Fraction(2, 10 ** 32)

    def test_contexts_are_shared(self):
        """Should hand out one context per digit count."""
        assert PrecisionSpec.extended(30).context() is PrecisionSpec.extended(30).context()


class TestInertia:
    """Tests for the negative-pivot count of the shifted pencil."""

    def test_counts_match_dense_spectrum(self, example2):
        """Should count the dense eigenvalues below each shift."""
        n = 24
        dense = dense_pencil_eigs(example2, n)
        shifts = (dense[:-1] + dense[1:]) / 2
        for j, lam in enumerate(shifts, start=1):
            assert inertia_count(example2, n, lam) == j

    def test_counts_at_range_ends(self, example1):
        """Should give 0 at m_f and n at M_f."""
        n = 30
        assert inertia_count(example1, n, 0.0) == 0
        assert inertia_count(example1, n, 2.0) == n

    def test_vectorized_counts_are_monotone(self, example3):
        """Should return nondecreasing counts for increasing shifts."""
        pencil = ToeplitzPencil(example3, 40, PrecisionSpec.double())
        counts, broken = pencil.negative_pivots(np.linspace(1.0, 3.0, 101))
        assert not broken.any()
        assert np.all(np.diff(counts) >= 0)

    def test_breakdown_on_zero_pivot(self):
        """Should raise when a pivot vanishes exactly."""
        pair = SymbolPair.from_coefficients([1], [2])
        with pytest.raises(PivotBreakdownError):
            inertia_count(pair, 1, 0.5)

    def test_extended_matches_double(self, example1, extended):
        """Should give the same counts in 40-digit arithmetic away from eigenvalues."""
        n = 20
        shifts = np.linspace(0.05, 1.95, 9)
        for lam in shifts:
            assert inertia_count(example1, n, lam, extended) == inertia_count(example1, n, lam)


class TestEigensolver:
    """Tests for eigenvalues by index."""

    @pytest.mark.parametrize("number", [1, 2, 3])
    def test_matches_dense_solver(self, number):
        """Should agree with scipy's symmetric-definite solver."""
        pair = certify(example_pair(number), samples=500)
        n = 32
        np.testing.assert_allclose(all_eigs(pair, n), dense_pencil_eigs(pair, n), atol=1e-10)

    @pytest.mark.parametrize("number", [1, 2, 3])
    def test_matches_characteristic_polynomial(self, number):
        """Should agree with the roots of det(T_n(l) - lambda T_n(g)) for n <= 16."""
        pair = certify(example_pair(number), samples=500)
        n = 12
        np.testing.assert_allclose(all_eigs(pair, n), charpoly_pencil_roots(pair, n), atol=1e-10)

    def test_matches_cholesky_reduction(self, example2):
        """Should agree with eigvalsh of L^-1 A L^-T."""
        n = 20
        a, b = ToeplitzPencil(example2, n, PrecisionSpec.double()).dense()
        lower = cholesky(b, lower=True)
        c = solve_triangular(lower, solve_triangular(lower, a, lower=True).T, lower=True)
        np.testing.assert_allclose(all_eigs(example2, n), eigvalsh((c + c.T) / 2), atol=1e-10)

    def test_constant_ratio(self):
        """Should return the constant for l = 2g."""
        pair = SymbolPair.from_coefficients([6, 4], [3, 2])
        np.testing.assert_array_equal(all_eigs(pair, 5), [2.0] * 5)

    def test_eigenvalues_lie_inside_range(self, example1):
        """Should keep every eigenvalue strictly inside (m_f, M_f)."""
        values = all_eigs(example1, 200)
        assert values.min() > 0.0
        assert values.max() < 2.0
        assert np.all(np.diff(values) > 0)

    def test_single_index(self, example1):
        """Should return the j-th smallest eigenvalue."""
        n = 40
        full = all_eigs(example1, n)
        assert eig_by_index(example1, n, 7) == pytest.approx(full[6], abs=1e-12)

    def test_subset_of_indices(self, example3):
        """Should return eigenvalues in the order of the requested indices."""
        n = 30
        full = all_eigs(example3, n)
        values = eigs_by_indices(example3, n, [30, 1, 15])
        np.testing.assert_allclose(values, full[[29, 0, 14]], atol=1e-12)

    def test_rejects_bad_index(self, example1):
        """Should refuse indices outside 1..n."""
        with pytest.raises(ValueError):
            eig_by_index(example1, 10, 11)
        with pytest.raises(ValueError):
            eig_by_index(example1, 10, 0)

    def test_extended_precision(self, example1, extended):
        """Should agree with doubles and shrink to the extended width."""
        n = 16
        values = all_eigs(example1, n, extended)
        assert values.dtype == object
        np.testing.assert_allclose(np.array(values, dtype=float), all_eigs(example1, n), atol=1e-12)
        reference = charpoly_pencil_roots(example1, n)
        np.testing.assert_allclose(np.array(values, dtype=float), reference, atol=1e-13)

    def test_parallel_matches_serial(self, example2):
        """Should give identical results with worker processes."""
        n = 40
        serial = eigs_by_indices(example2, n, range(1, n + 1))
        parallel = eigs_by_indices(example2, n, range(1, n + 1), jobs=2)
        np.testing.assert_array_equal(serial, parallel)

    def test_bounds_of_uncertified_pair(self):
        """Should bracket the spectrum of a pair that was never certified."""
        pair = example_pair(1)
        low, high = spectral_bounds(pair, 20, PrecisionSpec.double())
        values = dense_pencil_eigs(pair, 20)
        assert low < values.min()
        assert high > values.max()


class TestBreakdownNearResolution:
    """Tests for pivot breakdowns when the bracket is down to a few ulps."""

    def test_double_resolution_limit_terminates(self, example1):
        """Should return lambda_1 of the n=8 pencil when bisecting to zero width."""
        value = eigs_by_indices(example1, 8, [1], PrecisionSpec.double(), 0.0)[0]
        assert value == pytest.approx(dense_pencil_eigs(example1, 8)[0], abs=1e-14)

    def test_every_index_at_zero_width(self, example1):
        """Should finish all indices of a small pencil at the resolution limit."""
        values = eigs_by_indices(example1, 8, range(1, 9), PrecisionSpec.double(), 0.0)
        np.testing.assert_allclose(values, dense_pencil_eigs(example1, 8), atol=1e-13)

    def test_tiny_bracket_counts_as_converged(self):
        """Should settle a two-ulp bracket whose midpoint always breaks down."""
        pencil = AlwaysBrokenPencil()
        lo = 1.0
        hi = np.nextafter(np.nextafter(lo, 2.0), 2.0)
        result = _bisect(
            pencil, np.array([1]), np.array([lo]), np.array([hi]), 0.0, 2.0 ** -8,
        )
        assert lo <= result[0] <= hi
        assert pencil.calls <= 2 + 3

    def test_wide_bracket_still_raises(self):
        """Should report a breakdown that persists in a wide bracket."""
        with pytest.raises(PivotBreakdownError):
            _bisect(
                AlwaysBrokenPencil(), np.array([1]), np.array([0.0]), np.array([1.0]), 1e-3, 1e-3,
            )


class TestPrecisionContract:
    """Tests for agreement between extended precisions."""

    def test_sixty_and_seventy_digits_agree(self, example2):
        """Should change eigenvalues by at most 1e-48 from 60 to 70 digits at width 1e-50."""
        n = 10
        tol = Fraction(1, 10 ** 50)
        indices = [1, 5, 10]
        sixty = eigs_by_indices(example2, n, indices, PrecisionSpec.extended(60), tol)
        seventy = eigs_by_indices(example2, n, indices, PrecisionSpec.extended(70), tol)
        ctx60 = PrecisionSpec.extended(60).context()
        ctx70 = PrecisionSpec.extended(70).context()
        with localcontext() as dec:
            dec.prec = 100
            for a, b in zip(sixty, seventy):
                diff = abs(Decimal(numeric.format_number(a, ctx60)) - Decimal(numeric.format_number(b, ctx70)))
                assert diff <= Decimal("1e-48")
