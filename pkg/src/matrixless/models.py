"""
Result models for matrixless.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Optional

import numpy as np

from .utils.validators import fraction_to_text

if TYPE_CHECKING:
    from .symbols.symbol_pair import SymbolPair


@dataclass(slots=True)
class MonotoneVerdict:
    """
    Outcome of the positivity and monotonicity checks on a symbol pair.

    Attributes:
        certified: True when g > 0 and f is strictly increasing on every sample
        positive: True when g stayed above the floor on every sample
        samples: Number of interior sample points
        m_f: Exact f(0+) for certified pairs
        M_f: Exact f(pi-) for certified pairs
        violations: Sample pairs (theta_i, theta_{i+1}) with f(theta_{i+1}) <= f(theta_i)
        g_violations: Samples where g fell below the floor
        derivative_violations: Samples where f' is negative beyond rounding
        quotient: Simplified cosine polynomial l/g when g divides l
        pair: Copy of the pair with the certification recorded
    """

    certified: bool
    positive: bool
    samples: int
    m_f: Optional[Fraction] = None
    M_f: Optional[Fraction] = None
    violations: list[tuple[float, float]] = field(default_factory=list)
    g_violations: list[float] = field(default_factory=list)
    derivative_violations: list[float] = field(default_factory=list)
    quotient: Optional[str] = None
    pair: Optional["SymbolPair"] = None

    @property
    def reason(self) -> Optional[str]:
        """Short description of the first failed hypothesis."""
        if self.certified:
            return None
        if not self.positive:
            return f"g is not positive on (0, pi): {len(self.g_violations)} samples at or below the floor"
        if self.violations:
            a, b = self.violations[0]
            return (
                f"f is not strictly increasing: {len(self.violations)} violating sample pairs, "
                f"first at ({a:.6g}, {b:.6g})"
            )
        if self.derivative_violations:
            return f"f' < 0 at {len(self.derivative_violations)} samples"
        return "f is constant"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "certified": self.certified,
            "positive": self.positive,
            "samples": self.samples,
            "m_f": None if self.m_f is None else fraction_to_text(self.m_f),
            "M_f": None if self.M_f is None else fraction_to_text(self.M_f),
            "violations": [list(v) for v in self.violations[:20]],
            "violation_count": len(self.violations),
            "g_violation_count": len(self.g_violations),
            "derivative_violation_count": len(self.derivative_violations),
            "quotient": self.quotient,
            "reason": self.reason,
        }


@dataclass(slots=True)
class ApproximationResult:
    """
    Eigenvalues reconstructed from an expansion table.

    Attributes:
        n: Matrix order
        k: Level used (corrections 1..k-1)
        space: "s" or "lambda"
        values: n approximated eigenvalues, index order j = 1..n
        clamped: Number of reconstructed arguments moved back into [0, pi]
        inversions: Number of j with values[j] < values[j-1]
        elapsed: Wall-clock seconds
    """

    n: int
    k: int
    space: str
    values: np.ndarray
    clamped: int = 0
    inversions: int = 0
    elapsed: float = 0.0


@dataclass(slots=True)
class ErrorReport:
    """
    Absolute errors of one approximated spectrum against its reference.

    Attributes:
        n: Matrix order
        k: Level
        space: "s" or "lambda"
        errors: Per-index errors |lambda_j - approx_j|, j = 1..n
        max_error: max_j errors[j]
        normalized: (n+1)^k * max_error
        oracle_digits: Decimal digits of the reference spectrum
    """

    n: int
    k: int
    space: str
    errors: np.ndarray
    max_error: float
    normalized: float
    oracle_digits: int

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization (per-index errors omitted)."""
        return {
            "n": self.n,
            "k": self.k,
            "space": self.space,
            "max_error": self.max_error,
            "normalized": self.normalized,
            "oracle_digits": self.oracle_digits,
        }


@dataclass(slots=True)
class ErrorTermBudget:
    """
    Empirical constant c in |E| <= c h^k, per level.

    Attributes:
        K: Number of levels of the table
        c_hat: level -> max over orders of (n+1)^k * eps_{n,k}
        per_order: level -> {order: normalized error}
    """

    K: int
    c_hat: dict[int, float] = field(default_factory=dict)
    per_order: dict[int, dict[int, float]] = field(default_factory=dict)

    def spread(self, k: int) -> float:
        """Relative spread (max - min) / max of the normalized errors at level k."""
        values = list(self.per_order.get(k, {}).values())
        if not values or max(values) == 0:
            return 0.0
        return (max(values) - min(values)) / max(values)


@dataclass(slots=True)
class ParityDiagnostic:
    """Maxima of the per-index errors over even and odd j."""

    n: int
    k: int
    even_max: float
    odd_max: float
    ratio: float
    anomaly: bool

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "n": self.n,
            "k": self.k,
            "even_max": self.even_max,
            "odd_max": self.odd_max,
            # an exact parity has an infinite ratio, which JSON cannot carry
            "ratio": None if math.isinf(self.ratio) else self.ratio,
            "anomaly": self.anomaly,
        }


@dataclass(slots=True)
class SweepResult:
    """
    Error reports for every (order, level) cell of a sweep.

    Attributes:
        orders: Matrix orders in sweep order
        levels: Levels in sweep order
        space: "s" or "lambda"
        reports: (n, k) -> ErrorReport
        convergence: (n, k) -> empirical order between n and the next swept order
        parity: (n, k) -> ParityDiagnostic
    """

    orders: list[int]
    levels: list[int]
    space: str
    reports: dict[tuple[int, int], ErrorReport] = field(default_factory=dict)
    convergence: dict[tuple[int, int], float] = field(default_factory=dict)
    parity: dict[tuple[int, int], ParityDiagnostic] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> ErrorReport:
        return self.reports[key]

    def __len__(self) -> int:
        return len(self.reports)

    def is_empty(self) -> bool:
        return not self.reports

    def cells(self) -> list[ErrorReport]:
        """Reports ordered level-major, then by order (the layout of the printed tables)."""
        return [
            self.reports[(n, k)]
            for k in self.levels
            for n in self.orders
            if (n, k) in self.reports
        ]

    @property
    def anomalies(self) -> list[ParityDiagnostic]:
        return [d for d in self.parity.values() if d.anomaly]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "orders": list(self.orders),
            "levels": list(self.levels),
            "space": self.space,
            "cells": [r.to_dict() for r in self.cells()],
            "convergence": {
                f"{n},{k}": (None if math.isnan(v) else v) for (n, k), v in self.convergence.items()
            },
            "parity": [d.to_dict() for d in self.parity.values()],
        }
