"""
Eigenvalues of the pencil (T_n(l), T_n(g)) by inertia bisection.

The j-th eigenvalue of X_n = T_n(g)^-1 T_n(l) is located by bisection on
lambda using the count of eigenvalues below lambda, which equals the number
of negative pivots of T_n(l) - lambda T_n(g). All requested indices are
bisected together, one vectorized factorization per step.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from ..config import Config
from ..exceptions import NoBracketError, PivotBreakdownError
from ..logger import get_logger
from ..symbols.symbol_pair import SymbolPair
from ..utils import numeric
from .banded import ToeplitzPencil
from .precision import PrecisionSpec

logger = get_logger(__name__)

BRACKET_SAMPLES = 4097
# Half-width of the double-precision seed bracket, in units of the double tolerance
SEED_WIDTH = 64
# Brackets at most this many ulps wide count as converged after a persistent breakdown
RESOLUTION_ULPS = 4


def inertia_count(
    pair: SymbolPair,
    n: int,
    lam: Any,
    prec: Optional[PrecisionSpec] = None,
) -> int:
    """
    Number of eigenvalues of X_n strictly below ``lam``.

    Raises:
        PivotBreakdownError: a pivot fell below the floor; perturb lam and retry
    """
    pencil = ToeplitzPencil(pair, n, prec or PrecisionSpec.double())
    counts, broken = pencil.negative_pivots(lam)
    if broken[0]:
        raise PivotBreakdownError(f"pivot breakdown at lambda = {lam} (n = {n})")
    return int(counts[0])


def spectral_bounds(pair: SymbolPair, n: int, prec: PrecisionSpec) -> tuple[Fraction, Fraction]:
    """
    Interval containing every eigenvalue of X_n.

    Certified pairs use the exact (m_f, M_f). Otherwise f is sampled, the
    range widened and then checked with inertia counts at both ends.
    """
    if pair.monotone_certified:
        return pair.m_f, pair.M_f

    theta = np.linspace(0.0, np.pi, BRACKET_SAMPLES)
    values = np.asarray(pair.f_eval(theta), dtype=np.float64)
    low, high = float(values.min()), float(values.max())
    pad = max(high - low, abs(high), abs(low), 1.0) * 1e-6
    pencil = ToeplitzPencil(pair, n, prec)
    for _ in range(60):
        lo, hi = Fraction(low - pad), Fraction(high + pad)
        counts, broken = pencil.negative_pivots(
            numeric.to_array([lo, hi], pencil.ctx)
        )
        if not broken.any() and counts[0] == 0 and counts[1] == n:
            return lo, hi
        pad *= 2
    raise NoBracketError(f"could not bracket the spectrum of the n={n} pencil")


def _at_resolution(lo: Any, hi: Any, ctx: Any) -> bool:
    """True when [lo, hi] is only a few units in the last place wide."""
    eps = np.finfo(np.float64).eps if numeric.is_double(ctx) else ctx.eps
    scale = max(abs(lo), abs(hi))
    return bool(hi - lo <= RESOLUTION_ULPS * eps * scale)


def _bisect(
    pencil: ToeplitzPencil,
    indices: np.ndarray,
    low: np.ndarray,
    high: np.ndarray,
    tol: Any,
    nudge: Any,
) -> np.ndarray:
    """Shrink [low, high] around lambda_j for every j until the width is at most tol."""
    ctx = pencil.ctx
    low = low.copy()
    high = high.copy()
    active = np.ones(indices.shape, dtype=bool)

    while True:
        active &= np.asarray(high - low > tol, dtype=bool)
        if not active.any():
            break
        idx = np.flatnonzero(active)
        lo, hi = low[idx], high[idx]
        mid = (lo + hi) / 2
        # resolution limit reached: no representable point strictly inside
        stuck = np.asarray((mid <= lo) | (mid >= hi), dtype=bool)
        if stuck.any():
            active[idx[stuck]] = False
            keep = ~stuck
            idx, lo, hi, mid = idx[keep], lo[keep], hi[keep], mid[keep]
            if idx.size == 0:
                break

        counts, broken = pencil.negative_pivots(mid)
        settled = np.zeros(idx.shape, dtype=bool)
        attempt = 0
        while broken.any():
            attempt += 1
            redo = np.flatnonzero(broken)
            if attempt > Config.BREAKDOWN_RETRIES:
                tiny = np.array([_at_resolution(lo[r], hi[r], ctx) for r in redo], dtype=bool)
                if not tiny.all():
                    bad = redo[~tiny][0]
                    raise PivotBreakdownError(
                        f"pivot breakdown persists near lambda = {mid[bad]} "
                        f"for j = {int(indices[idx[bad]])} (n = {pencil.n}) after "
                        f"{Config.BREAKDOWN_RETRIES} nudges"
                    )
                settled[redo] = True
                broken[redo] = False
                break
            step = numeric.to_array(
                [min(attempt * nudge, (hi[r] - lo[r]) / 4) for r in redo], ctx
            )
            moved = mid[redo] + step
            # a nudge that rounds onto an end (or nowhere) cannot shrink the bracket
            lost = np.asarray(
                (moved <= lo[redo]) | (moved >= hi[redo]) | (moved == mid[redo]), dtype=bool
            )
            if lost.any():
                settled[redo[lost]] = True
                broken[redo[lost]] = False
                redo, moved = redo[~lost], moved[~lost]
            if redo.size == 0:
                break
            mid[redo] = moved
            counts[redo], broken[redo] = pencil.negative_pivots(mid[redo])

        if settled.any():
            active[idx[settled]] = False
            keep = ~settled
            idx, mid, counts = idx[keep], mid[keep], counts[keep]
        below = counts >= indices[idx]
        high[idx[below]] = mid[below]
        low[idx[~below]] = mid[~below]

    return (low + high) / 2


def _solve(
    pair: SymbolPair,
    n: int,
    indices: np.ndarray,
    prec: PrecisionSpec,
    tol: Any,
    low: Optional[np.ndarray] = None,
    high: Optional[np.ndarray] = None,
) -> np.ndarray:
    pencil = ToeplitzPencil(pair, n, prec)
    ctx = pencil.ctx
    m_f, M_f = spectral_bounds(pair, n, prec)
    nudge = numeric.to_number(prec.nudge(M_f - m_f), ctx)
    if low is None:
        low = numeric.full(indices.size, m_f, ctx)
        high = numeric.full(indices.size, M_f, ctx)
    return _bisect(pencil, indices, low, high, numeric.to_number(tol, ctx), nudge)


def _seed_bracket(
    pair: SymbolPair,
    n: int,
    indices: np.ndarray,
    prec: PrecisionSpec,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Extended-precision bracket from a double solve.

    Each [v - d, v + d] around the double value v is accepted only when the
    extended inertia counts confirm it contains lambda_j; the rest fall back
    to the global bracket.
    """
    ctx = prec.context()
    m_f, M_f = spectral_bounds(pair, n, prec)
    low = numeric.full(indices.size, m_f, ctx)
    high = numeric.full(indices.size, M_f, ctx)
    try:
        seeds = _solve(pair, n, indices, PrecisionSpec.double(), Config.ORACLE_TOL)
    except PivotBreakdownError as e:
        logger.debug("Double seed unavailable (%s); using the global bracket", e)
        return low, high

    half = SEED_WIDTH * Config.ORACLE_TOL
    lo_try = numeric.to_array([max(Fraction(v - half), m_f) for v in seeds], ctx)
    hi_try = numeric.to_array([min(Fraction(v + half), M_f) for v in seeds], ctx)
    pencil = ToeplitzPencil(pair, n, prec)
    lo_counts, lo_broken = pencil.negative_pivots(lo_try)
    hi_counts, hi_broken = pencil.negative_pivots(hi_try)
    ok = (~lo_broken) & (~hi_broken) & (lo_counts <= indices - 1) & (hi_counts >= indices)
    low[ok] = lo_try[ok]
    high[ok] = hi_try[ok]
    if not ok.all():
        logger.debug("Seed bracket rejected for %d of %d indices", int((~ok).sum()), indices.size)
    return low, high


def _solve_chunk(args: tuple) -> list:
    """Worker entry point; extended values travel as decimal strings."""
    pair, n, indices, prec, tol = args
    values = _eigs_serial(pair, n, np.asarray(indices, dtype=np.int64), prec, tol)
    if prec.is_double:
        return [float(v) for v in values]
    ctx = prec.context()
    return [numeric.format_number(v, ctx) for v in values]


def _eigs_serial(
    pair: SymbolPair,
    n: int,
    indices: np.ndarray,
    prec: PrecisionSpec,
    tol: Any,
) -> np.ndarray:
    ctx = prec.context()
    if pair.is_constant_ratio:
        return numeric.full(indices.size, pair.quotient.coeffs[0], ctx)
    if prec.is_double:
        return _solve(pair, n, indices, prec, tol)
    low, high = _seed_bracket(pair, n, indices, prec)
    return _solve(pair, n, indices, prec, tol, low, high)


def default_eig_tol(pair: SymbolPair, prec: PrecisionSpec) -> Any:
    """Config.ORACLE_TOL for doubles, (M_f - m_f) 10^-(digits-8) when extended."""
    return prec.eig_tol(pair.span)


def eigs_by_indices(
    pair: SymbolPair,
    n: int,
    indices: Sequence[int],
    prec: Optional[PrecisionSpec] = None,
    tol: Optional[Any] = None,
    jobs: int = 1,
) -> np.ndarray:
    """
    Eigenvalues lambda_j(X_n) for the given 1-based indices.

    Args:
        pair: Symbol pair (certified, or at least with T_n(g) positive definite)
        n: Matrix order
        indices: Indices in 1..n
        prec: Working precision (default double)
        tol: Absolute bisection width (default from default_eig_tol)
        jobs: Worker processes

    Returns:
        float64 array, or object array of mpmath numbers when extended
    """
    prec = prec or PrecisionSpec.double()
    tol = default_eig_tol(pair, prec) if tol is None else tol
    idx = np.asarray(list(indices), dtype=np.int64)
    if idx.size and (idx.min() < 1 or idx.max() > n):
        raise ValueError(f"indices must lie in 1..{n}")
    if idx.size == 0:
        return numeric.to_array([], prec.context())

    start = time.perf_counter()
    jobs = max(1, int(jobs))
    if jobs == 1 or idx.size < 2 * jobs:
        values = _eigs_serial(pair, n, idx, prec, tol)
    else:
        chunks = [c.tolist() for c in np.array_split(idx, jobs) if c.size]
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_solve_chunk, [(pair, n, c, prec, tol) for c in chunks]))
        ctx = prec.context()
        values = numeric.to_array(
            [v if prec.is_double else numeric.parse_number(v, ctx) for part in parts for v in part],
            ctx,
        )
    logger.debug(
        "%d eigenvalues of the n=%d pencil in %.2fs (%s, jobs=%d)",
        idx.size, n, time.perf_counter() - start, prec.label(), jobs,
    )
    return values


def eig_by_index(
    pair: SymbolPair,
    n: int,
    j: int,
    prec: Optional[PrecisionSpec] = None,
    tol: Optional[Any] = None,
) -> Any:
    """The j-th smallest eigenvalue of X_n (1-based)."""
    return eigs_by_indices(pair, n, [j], prec, tol)[0]


def all_eigs(
    pair: SymbolPair,
    n: int,
    prec: Optional[PrecisionSpec] = None,
    tol: Optional[Any] = None,
    jobs: int = 1,
) -> np.ndarray:
    """All n eigenvalues of X_n in nondecreasing order."""
    values = eigs_by_indices(pair, n, range(1, n + 1), prec, tol, jobs)
    if values.dtype == object:
        return numeric.to_array(sorted(values), (prec or PrecisionSpec.double()).context())
    return np.sort(values)
