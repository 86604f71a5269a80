"""
Extrapolation of expansion coefficients from nested-grid samples.

For one coarse node the deltas d_k measured on levels k = 1..K satisfy

    sum_{i=1..K} rho_i h_k^i = d_k,

a Vandermonde-type system in the steps. It is solved in the scaled unknowns
u_i = rho_i h_1^i, whose matrix (h_k / h_1)^i has entries in (0, 1].
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence, Union

import numpy as np

from ..exceptions import SingularSystemError
from ..utils import numeric
from .grid import GridSpec

StepsLike = Union[GridSpec, Sequence[Union[Fraction, float, int]]]

DOUBLE_RESIDUAL = 1e-12


def _steps(steps_or_grid: StepsLike) -> list[Fraction]:
    if isinstance(steps_or_grid, GridSpec):
        return steps_or_grid.steps
    steps = [Fraction(h) if not isinstance(h, float) else Fraction(repr(h)) for h in steps_or_grid]
    if len(set(steps)) != len(steps) or any(h <= 0 for h in steps):
        raise SingularSystemError(f"steps must be distinct and positive, got {steps}")
    return steps


def _scaled_matrix(steps: list[Fraction]) -> list[list[Fraction]]:
    h_1 = steps[0]
    return [[(h / h_1) ** i for i in range(1, len(steps) + 1)] for h in steps]


def extrapolate_nodes(deltas: Any, steps_or_grid: StepsLike, ctx: Any = None) -> np.ndarray:
    """
    Solve the extrapolation system for many nodes sharing the same steps.

    Args:
        deltas: Array of shape (nodes, K); row r holds d_1..d_K of node r
        steps_or_grid: GridSpec or explicit steps h_1..h_K
        ctx: None for doubles, or an mpmath context

    Returns:
        Array of shape (nodes, K) with rho_1..rho_K per node

    Raises:
        SingularSystemError: the system is singular or its residual is too large
    """
    steps = _steps(steps_or_grid)
    K = len(steps)
    rows = np.asarray(deltas, dtype=object if not numeric.is_double(ctx) else np.float64)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    if rows.shape[1] != K:
        raise SingularSystemError(f"expected {K} deltas per node, got {rows.shape[1]}")

    exact = _scaled_matrix(steps)
    scale = [steps[0] ** i for i in range(1, K + 1)]

    if numeric.is_double(ctx):
        matrix = np.array([[float(v) for v in row] for row in exact])
        try:
            scaled = np.linalg.solve(matrix, rows.T).T
        except np.linalg.LinAlgError as e:
            raise SingularSystemError(f"extrapolation system is singular: {e}") from e
        residual = np.abs(scaled @ matrix.T - rows).max(initial=0.0)
        bound = DOUBLE_RESIDUAL * max(np.abs(rows).max(initial=0.0), np.finfo(float).tiny)
        if not np.isfinite(scaled).all() or residual > bound:
            raise SingularSystemError(f"extrapolation residual {residual:.3g} exceeds {bound:.3g}")
        return scaled / np.array([float(s) for s in scale])

    matrix = ctx.matrix([[numeric.to_number(v, ctx) for v in row] for row in exact])
    bound_rel = ctx.mpf(10) ** (-(ctx.dps - 10))
    out = np.empty(rows.shape, dtype=object)
    for r, row in enumerate(rows):
        rhs = ctx.matrix([numeric.to_number(v, ctx) for v in row])
        try:
            u = ctx.lu_solve(matrix, rhs)
        except ZeroDivisionError as e:
            raise SingularSystemError("extrapolation system is singular") from e
        residual = ctx.mnorm(matrix * u - rhs, 1)
        if residual > bound_rel * max(ctx.mnorm(rhs, 1), ctx.mpf(10) ** (-ctx.dps * 2)):
            raise SingularSystemError(f"extrapolation residual {ctx.nstr(residual, 5)} too large")
        out[r] = [u[i] / numeric.to_number(scale[i], ctx) for i in range(K)]
    return out


def extrapolate_node(deltas: Sequence[Any], steps_or_grid: StepsLike, ctx: Any = None) -> np.ndarray:
    """
    Coefficients rho_1..rho_K of one node.

    Examples:
        K = 1: d -> d / h_1
        h = (1/2, 1/4), d = (3/8, 1/8) -> (1/4, 1)
    """
    return extrapolate_nodes(np.asarray([list(deltas)], dtype=object), steps_or_grid, ctx)[0]
