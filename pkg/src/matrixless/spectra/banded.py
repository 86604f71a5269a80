"""
Banded symmetric Toeplitz matrices and the pencil T_n(l) - lambda T_n(g).

Only the first column of the band is stored. The inertia of the shifted
pencil is read off a banded LDL^T factorization that runs for a whole vector
of shifts at once, over float64 arrays or object arrays of mpmath numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.linalg import toeplitz

from ..exceptions import OrderTooSmallError
from ..symbols.cosine_poly import CosinePoly
from ..symbols.symbol_pair import SymbolPair
from ..utils import numeric
from .precision import PrecisionSpec


@dataclass(frozen=True)
class BandedToeplitz:
    """
    Symmetric banded Toeplitz matrix of order n.

    Attributes:
        n: Matrix order
        diag_values: a_0..a_m, entry (i, j) = a_{|i-j|}
    """

    n: int
    diag_values: tuple[Fraction, ...]

    @property
    def band(self) -> int:
        return len(self.diag_values) - 1

    def entry(self, i: int, j: int) -> Fraction:
        d = abs(i - j)
        return self.diag_values[d] if d <= self.band else Fraction(0)

    def to_dense(self) -> np.ndarray:
        """Dense float64 copy, for oracles and small tests only."""
        column = np.zeros(self.n, dtype=np.float64)
        upto = min(self.n, len(self.diag_values))
        column[:upto] = [float(a) for a in self.diag_values[:upto]]
        return toeplitz(column)

    def to_exact(self) -> list[list[Fraction]]:
        """Dense rational copy."""
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]


def build_toeplitz(p: CosinePoly, n: int, truncate: bool = False) -> BandedToeplitz:
    """
    Banded storage of T_n(p).

    Args:
        p: Symbol
        n: Matrix order
        truncate: Allow n <= degree(p) by keeping only the first n band entries

    Returns:
        BandedToeplitz

    Raises:
        OrderTooSmallError: n <= degree(p) and truncation was not requested
    """
    if n < 1:
        raise OrderTooSmallError(f"matrix order must be positive, got {n}")
    band = p.band()
    if n <= p.degree:
        if not truncate:
            raise OrderTooSmallError(f"order n={n} must exceed the symbol degree {p.degree}")
        band = band[:n]
    return BandedToeplitz(n, band)


class ToeplitzPencil:
    """
    The symmetric-definite pencil (T_n(l), T_n(g)) at a given precision.

    Args:
        pair: Symbol pair
        n: Matrix order
        prec: Arithmetic of the factorization
    """

    def __init__(self, pair: SymbolPair, n: int, prec: PrecisionSpec):
        if n < 1:
            raise OrderTooSmallError(f"matrix order must be positive, got {n}")
        self.pair = pair
        self.n = n
        self.prec = prec
        self.ctx = prec.context()
        self.width = min(pair.band, n - 1)

        l_band = list(pair.l.band()) + [Fraction(0)] * pair.band
        g_band = list(pair.g.band()) + [Fraction(0)] * pair.band
        self._l = [numeric.to_number(v, self.ctx) for v in l_band[: self.width + 1]]
        self._g = [numeric.to_number(v, self.ctx) for v in g_band[: self.width + 1]]

        scale = sum(abs(float(v)) for v in l_band) + sum(abs(float(v)) for v in g_band)
        self.floor = numeric.to_number(prec.pivot_floor(scale or 1.0), self.ctx)

    def _as_shifts(self, shifts: Any) -> np.ndarray:
        if numeric.is_double(self.ctx):
            return np.atleast_1d(np.asarray(shifts, dtype=np.float64))
        if isinstance(shifts, np.ndarray) and shifts.dtype == object:
            return np.atleast_1d(shifts)
        values = shifts if np.ndim(shifts) else [shifts]
        return numeric.to_array(values, self.ctx)

    def negative_pivots(self, shifts: Any) -> tuple[np.ndarray, np.ndarray]:
        """
        Number of negative pivots of T_n(l) - s T_n(g) for every shift s.

        Pivots whose magnitude falls below the floor are replaced by the floor
        and reported in the breakdown mask; their counts are unreliable.

        Args:
            shifts: Scalar or 1-D array of shifts

        Returns:
            (counts, breakdown) integer and boolean arrays, one entry per shift
        """
        s = self._as_shifts(shifts)
        p = self.width
        band = [-(s * self._g[d]) + self._l[d] for d in range(p + 1)]

        counts = np.zeros(s.shape, dtype=np.int64)
        broken = np.zeros(s.shape, dtype=bool)
        pivots: list[np.ndarray] = []
        rows: list[list[np.ndarray]] = []

        for i in range(self.n):
            w = min(i, p)
            # multipliers[o - 1] = L[i, i - o]
            multipliers: list[Any] = [None] * w
            for oc in range(w, 0, -1):
                val = band[oc]
                for ok in range(oc + 1, w + 1):
                    val = val - multipliers[ok - 1] * pivots[-ok] * rows[-oc][ok - oc - 1]
                multipliers[oc - 1] = val / pivots[-oc]

            d = band[0]
            for o in range(1, w + 1):
                d = d - multipliers[o - 1] * multipliers[o - 1] * pivots[-o]

            small = np.asarray(abs(d) < self.floor, dtype=bool)
            if small.any():
                broken |= small
                d = np.where(small, self.floor, d)
            counts += np.asarray(d < 0, dtype=bool)

            pivots.append(d)
            rows.append(multipliers)
            if len(pivots) > p:
                pivots.pop(0)
                rows.pop(0)

        return counts, broken

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense float64 T_n(l) and T_n(g)."""
        return (
            build_toeplitz(self.pair.l, self.n, truncate=True).to_dense(),
            build_toeplitz(self.pair.g, self.n, truncate=True).to_dense(),
        )
