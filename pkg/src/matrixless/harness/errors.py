"""
Error measurement of approximated spectra against reference spectra.
"""
from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from ..logger import get_logger
from ..models import ErrorReport, SweepResult
from ..spectra.precision import DOUBLE_DIGITS, PrecisionSpec
from ..symbols.symbol_pair import SymbolPair
from ..expansion.reconstruct import approx_eigs
from ..expansion.table import ExpansionSpace, ExpansionTable
from .diagnostics import parity_diagnostic
from .reference import ReferenceCache, reference_spectrum

logger = get_logger(__name__)


def compare(
    approx: Iterable,
    reference: Iterable,
    k: int,
    space: str = ExpansionSpace.S_VARIABLE.value,
    oracle_digits: int = DOUBLE_DIGITS,
) -> ErrorReport:
    """
    Individual, maximum and normalized errors of one approximated spectrum.

    Both inputs are taken in the same index order j = 1..n.

    Raises:
        ValueError: the two spectra differ in length
    """
    approx = np.asarray(approx, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if approx.shape != reference.shape:
        raise ValueError(
            f"spectra differ in length: {approx.size} approximated, {reference.size} reference"
        )
    n = int(approx.size)
    errors = np.abs(reference - approx)
    max_error = float(errors.max()) if n else 0.0
    return ErrorReport(
        n=n,
        k=k,
        space=str(space),
        errors=errors,
        max_error=max_error,
        normalized=max_error * float(n + 1) ** k,
        oracle_digits=oracle_digits,
    )


def convergence_order(error_n: float, n: int, error_m: float, m: int) -> float:
    """
    Empirical order between orders n < m: log(eps_n / eps_m) / log((m+1)/(n+1)).

    For m = 2n+1 this is log2(eps_n / eps_m). NaN when either error vanishes.
    """
    if error_n <= 0.0 or error_m <= 0.0 or m == n:
        return math.nan
    return math.log(error_n / error_m) / math.log((m + 1) / (n + 1))


def table_sweep(
    table: ExpansionTable,
    pair: SymbolPair,
    orders: Iterable[int],
    levels: Iterable[int],
    prec: Optional[PrecisionSpec] = None,
    cache: Optional[ReferenceCache] = None,
    jobs: int = 1,
) -> SweepResult:
    """
    Error reports for the cross product of orders and levels.

    One reference spectrum is computed (or loaded) per order and shared by
    every level. Convergence orders are recorded between consecutive orders
    of the sorted sweep; parity diagnostics for every cell.

    Args:
        table: Expansion table of ``pair``
        pair: Symbol pair
        orders: Matrix orders
        levels: Levels, each within 1..K
        prec: Reference precision (default double)
        cache: Reference cache (None disables it)
        jobs: Worker processes for the reference spectra

    Returns:
        SweepResult; empty when ``orders`` or ``levels`` is empty
    """
    orders = list(orders)
    levels = list(levels)
    prec = prec or PrecisionSpec.double()
    table.check_pair(pair)
    for k in levels:
        table.check_level(k)

    result = SweepResult(orders=orders, levels=levels, space=table.space.value)
    if not orders or not levels:
        return result

    for n in orders:
        reference = reference_spectrum(pair, n, prec, cache=cache, jobs=jobs)
        for k in levels:
            approx = np.sort(approx_eigs(table, pair, n, k))
            report = compare(approx, reference, k, table.space.value, prec.digits)
            result.reports[(n, k)] = report
            result.parity[(n, k)] = parity_diagnostic(report)
            logger.info(
                "n=%d k=%d: max error %.4e, normalized %.5f", n, k, report.max_error, report.normalized,
            )

    ascending = sorted(set(orders))
    for k in levels:
        for n, m in zip(ascending, ascending[1:]):
            result.convergence[(n, k)] = convergence_order(
                result.reports[(n, k)].max_error, n, result.reports[(m, k)].max_error, m,
            )
    return result
