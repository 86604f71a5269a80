"""
Approximation phase: all n eigenvalues of X_n from an expansion table.

In s-space lambda_j = f(theta + sum_{l=1}^{k-1} rho_l(theta) h^l) and in
lambda-space lambda_j = f(theta) + sum_{l=1}^{k-1} c_l(theta) h^l, with
theta = theta_{j,n} and h = 1/(n+1). Each index is independent, and the
work is done in fixed-size chunks so memory stays bounded for large n.
"""
from __future__ import annotations

import time
from typing import Callable, Iterable, Optional

import numpy as np

from ..config import Config
from ..exceptions import LevelOutOfRangeError, OrderTooSmallError, TableFormatError
from ..logger import get_logger
from ..models import ApproximationResult, ErrorTermBudget
from ..spectra.eigensolver import all_eigs
from ..symbols.symbol_pair import SymbolPair
from .interpolation import interp_on_grid
from .table import ExpansionSpace, ExpansionTable

logger = get_logger(__name__)


def reconstruct(
    table: ExpansionTable,
    pair: SymbolPair,
    n: int,
    k: int,
    chunk: Optional[int] = None,
) -> ApproximationResult:
    """
    Approximate lambda_1..lambda_n of X_n at level k.

    Reconstructed s-space arguments outside (0, pi) are clamped to [0, pi]
    and counted in the result.

    Args:
        table: Endpoint-filled table computed for ``pair``
        pair: Symbol pair
        n: Matrix order
        k: Level, 1..K (uses corrections 1..k-1)
        chunk: Indices per vectorized block (default Config.APPROX_CHUNK)

    Returns:
        ApproximationResult with values in index order j = 1..n

    Raises:
        DigestMismatchError: table belongs to another pair
        LevelOutOfRangeError: k outside 1..K
        TableFormatError: k > 1 on a table whose endpoints were never filled
    """
    table.check_pair(pair)
    if not 1 <= k <= table.K:
        raise LevelOutOfRangeError(f"level k={k} outside 1..{table.K}")
    if n < 1:
        raise OrderTooSmallError(f"matrix order must be positive, got {n}")
    if k > 1 and not table.endpoints_filled:
        raise TableFormatError("table endpoints are not filled")

    chunk = chunk or Config.APPROX_CHUNK
    h = 1.0 / (n + 1)
    values = np.empty(n, dtype=np.float64)
    clamped = 0
    start_time = time.perf_counter()

    for first in range(1, n + 1, chunk):
        j = np.arange(first, min(first + chunk, n + 1), dtype=np.int64)
        theta = j * np.pi / (n + 1)

        correction = np.zeros(j.shape, dtype=np.float64)
        for level in range(k - 1, 0, -1):
            correction = (correction + interp_on_grid(table, level, j, n)) * h

        if table.space is ExpansionSpace.S_VARIABLE:
            s = theta + correction
            outside = (s <= 0.0) | (s >= np.pi)
            if outside.any():
                clamped += int(np.count_nonzero(outside))
                s = np.clip(s, 0.0, np.pi)
            values[first - 1 : first - 1 + j.size] = pair.f_eval(s)
        else:
            values[first - 1 : first - 1 + j.size] = pair.f_eval(theta) + correction

    inversions = int(np.count_nonzero(np.diff(values) < 0))
    elapsed = time.perf_counter() - start_time
    if clamped:
        logger.warning("%d of %d reconstructed arguments clamped to [0, pi] (n=%d, k=%d)", clamped, n, n, k)
    if inversions:
        logger.warning("%d order inversions in the approximated spectrum (n=%d, k=%d)", inversions, n, k)
    logger.info("Approximated %d eigenvalues at level %d in %.3fs", n, k, elapsed)

    return ApproximationResult(
        n=n,
        k=k,
        space=table.space.value,
        values=values,
        clamped=clamped,
        inversions=inversions,
        elapsed=elapsed,
    )


def approx_eigs(table: ExpansionTable, pair: SymbolPair, n: int, k: int) -> np.ndarray:
    """The n approximated eigenvalues of X_n at level k, index order j = 1..n."""
    return reconstruct(table, pair, n, k).values


def estimate_error_constant(
    table: ExpansionTable,
    pair: SymbolPair,
    orders: Iterable[int],
    k: int,
    reference: Optional[Callable[[int], np.ndarray]] = None,
) -> ErrorTermBudget:
    """
    Empirical constant c_hat = max_n (n+1)^k eps_{n,k}.

    Args:
        table: Expansion table
        pair: Symbol pair of the table
        orders: Matrix orders to measure
        k: Level
        reference: n -> sorted reference spectrum (default: double-precision all_eigs)

    Returns:
        ErrorTermBudget with one entry for level k
    """
    reference = reference or (lambda n: all_eigs(pair, n))
    budget = ErrorTermBudget(K=table.K)
    per_order: dict[int, float] = {}
    for n in orders:
        approx = np.sort(approx_eigs(table, pair, n, k))
        exact = np.asarray(reference(n), dtype=np.float64)
        per_order[n] = float(np.max(np.abs(approx - exact))) * (n + 1) ** k
    if per_order:
        budget.per_order[k] = per_order
        budget.c_hat[k] = max(per_order.values())
    return budget
