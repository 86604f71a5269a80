"""
Precompute phase: eigenvalues on the nested grids, extrapolated per node.
"""
from __future__ import annotations

import time
from typing import Any, Optional, Union

import numpy as np

from ..config import Config
from ..exceptions import MatrixlessError, NodeComputationError
from ..logger import get_logger
from ..spectra.eigensolver import eigs_by_indices
from ..spectra.precision import PrecisionSpec
from ..symbols.inverse import default_inverse_tol, f_inverse
from ..symbols.symbol_pair import SymbolPair
from ..utils import numeric
from .extrapolation import extrapolate_nodes
from .grid import GridSpec
from .table import ExpansionSpace, ExpansionTable, fill_endpoints

logger = get_logger(__name__)


def _level_eigenvalues(
    pair: SymbolPair,
    grid: GridSpec,
    k: int,
    prec: PrecisionSpec,
    tol: Any,
    jobs: int,
) -> np.ndarray:
    n_k = grid.order(k)
    indices = grid.indices(k)
    try:
        return eigs_by_indices(pair, n_k, indices, prec, tol, jobs)
    except MatrixlessError as e:
        # locate the failing node for the error message
        for j in indices:
            try:
                eigs_by_indices(pair, n_k, [j], prec, tol)
            except MatrixlessError as node_error:
                raise NodeComputationError(node_error, level=k, order=n_k, index=j) from node_error
        raise NodeComputationError(e, level=k, order=n_k, index=indices[0]) from e


def precompute(
    pair: SymbolPair,
    grid: GridSpec,
    space: Union[ExpansionSpace, str] = ExpansionSpace.S_VARIABLE,
    prec: Optional[PrecisionSpec] = None,
    jobs: int = 1,
    eig_tol: Optional[Any] = None,
) -> ExpansionTable:
    """
    Build the expansion table of a certified pair.

    For every coarse index j_1 and level k the eigenvalue lambda_{j_k}(X_{n_k})
    is computed; in s-space it is mapped back through the inverse of f. The
    deltas against sigma_{j_1} (or f(sigma_{j_1})) are extrapolated node by
    node, then the endpoint values are filled.

    Args:
        pair: Certified symbol pair
        grid: Nested grid
        space: Expansion variable
        prec: Working precision (default: Config.DEFAULT_DIGITS extended digits)
        jobs: Worker processes for the eigenvalue extraction
        eig_tol: Bisection width; doubles default to the resolution limit

    Returns:
        Endpoint-filled ExpansionTable

    Raises:
        NotMonotoneError: the pair is not certified
        NodeComputationError: a node pipeline failed; carries (k, n_k, j_k)
    """
    pair.require_certified()
    space = ExpansionSpace(space)
    prec = prec or PrecisionSpec.from_digits(Config.DEFAULT_DIGITS)
    ctx = prec.context()
    if eig_tol is None:
        eig_tol = 0.0 if prec.is_double else prec.eig_tol(pair.span)
    inverse_tol = default_inverse_tol(ctx)

    n_1, K = grid.n_1, grid.K
    sigma = numeric.grid_angle(np.arange(1, n_1 + 1), n_1 + 1, ctx)
    baseline = sigma if space is ExpansionSpace.S_VARIABLE else pair.f_eval(sigma, ctx)
    deltas = np.empty((n_1, K), dtype=np.float64 if prec.is_double else object)

    logger.info(
        "Precompute: n_1=%d, K=%d, orders=%s, space=%s, precision=%s",
        n_1, K, grid.orders, space.value, prec.label(),
    )
    total = time.perf_counter()
    for k in grid.levels:
        start = time.perf_counter()
        lam = _level_eigenvalues(pair, grid, k, prec, eig_tol, jobs)
        if space is ExpansionSpace.S_VARIABLE:
            values = np.empty(n_1, dtype=deltas.dtype)
            for r, j in enumerate(grid.indices(k)):
                try:
                    values[r] = f_inverse(pair, lam[r], inverse_tol, ctx)
                except MatrixlessError as e:
                    raise NodeComputationError(e, level=k, order=grid.order(k), index=j) from e
        else:
            values = lam
        deltas[:, k - 1] = values - baseline
        logger.info(
            "Level k=%d (n_k=%d, %d indices) done in %.2fs",
            k, grid.order(k), n_1, time.perf_counter() - start,
        )

    rho = extrapolate_nodes(deltas, grid, ctx)

    consistency_violations = 0
    if K > 1:
        consistency_violations = int(
            np.count_nonzero(np.asarray(abs(deltas[:, K - 1]) >= abs(deltas[:, 0]), dtype=bool))
        )
        if consistency_violations:
            logger.warning(
                "%d of %d nodes do not approach sigma monotonically across levels",
                consistency_violations, n_1,
            )

    domain_violations = 0
    if space is ExpansionSpace.S_VARIABLE:
        h_1 = numeric.to_number(grid.step(1), ctx)
        pi = numeric.pi(ctx)
        for r in range(n_1):
            s = sigma[r] + sum(rho[r, i] * h_1 ** (i + 1) for i in range(K))
            if not 0 < s < pi:
                domain_violations += 1
        if domain_violations:
            logger.warning("%d reconstructed coarse arguments leave (0, pi)", domain_violations)

    rows = []
    for k in grid.levels:
        interior = [numeric.format_number(rho[r, k - 1], ctx) for r in range(n_1)]
        rows.append(tuple([None] + interior + [None]))

    table = ExpansionTable(
        space=space,
        grid=grid,
        coeffs=tuple(rows),
        l=tuple(pair.l.to_text()),
        g=tuple(pair.g.to_text()),
        digest=pair.digest(),
        precision=prec,
        provenance={
            "orders": grid.orders,
            "eig_tol": str(eig_tol),
            "inverse_tol": numeric.format_number(inverse_tol, ctx),
            "avram_parter_violations": consistency_violations,
            "domain_violations": domain_violations,
        },
    )
    table = fill_endpoints(table)
    logger.info("Precompute finished in %.2fs", time.perf_counter() - total)
    return table
