"""
Local polynomial interpolation of the table coefficients.

Level k is interpolated through the K - k + 5 coarse nodes (endpoints
included) nearest to the query point, in barycentric form. A query on
a node returns the stored value. When two windows are equally near, the
leftward one is used.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from scipy.interpolate import BarycentricInterpolator

from ..exceptions import OutOfRangeError
from .table import ExpansionTable

# Distance in node units below which a float query counts as hitting the node
NODE_SNAP = 1e-12


def window_start(numerator: np.ndarray, denominator: int, width: int, n_nodes: int) -> np.ndarray:
    """
    First node of the interpolation window for x = numerator / denominator.

    The window is {s, ..., s + width - 1} with s = ceil(x - width/2), clipped
    to the node range 0..n_nodes-1. Integer arithmetic throughout.
    """
    # ceil((2P - w Q) / (2Q)) as negated floor division
    start = -((width * denominator - 2 * numerator) // (2 * denominator))
    return np.clip(start, 0, n_nodes - width)


def _evaluate(values: np.ndarray, start: np.ndarray, offset: np.ndarray, width: int) -> np.ndarray:
    """Interpolate ``values`` on windows [start, start+width) at local coordinates ``offset``."""
    out = np.empty(offset.shape, dtype=np.float64)
    nodes = np.arange(width, dtype=np.float64)
    for s in np.unique(start):
        mask = start == s
        interpolator = BarycentricInterpolator(nodes, values[s : s + width])
        out[mask] = interpolator(offset[mask])
    return out


def interp_on_grid(table: ExpansionTable, k: int, j: np.ndarray, n: int) -> np.ndarray:
    """
    Coefficient k at theta_{j,n} = j pi / (n+1) for an array of indices j.

    The position in coarse-node units is j (n_1+1) / (n+1), kept as an
    integer fraction so node hits are detected exactly.
    """
    table.check_level(k)
    values = table.level(k)
    n_nodes = table.n_1 + 2
    width = table.grid.stencil_size(k)
    j = np.asarray(j, dtype=np.int64)
    if j.size and (j.min() < 0 or j.max() > n + 1):
        raise OutOfRangeError(f"indices must lie in 0..{n + 1}")

    numerator = j * (table.n_1 + 1)
    denominator = n + 1
    out = np.empty(j.shape, dtype=np.float64)

    on_node = numerator % denominator == 0
    out[on_node] = values[numerator[on_node] // denominator]

    off = ~on_node
    if off.any():
        num = numerator[off]
        start = window_start(num, denominator, width, n_nodes)
        offset = (num - start * denominator) / denominator
        out[off] = _evaluate(values, start, offset, width)
    return out


def interp_coeff(table: ExpansionTable, k: int, theta: Any) -> float:
    """
    Coefficient k at an arbitrary angle theta in [0, pi].

    Raises:
        OutOfRangeError: theta outside [0, pi]
        LevelOutOfRangeError: k outside 1..K
    """
    table.check_level(k)
    theta = float(theta)
    if not 0.0 <= theta <= np.pi:
        raise OutOfRangeError(f"theta = {theta!r} outside [0, pi]")

    values = table.level(k)
    n_nodes = table.n_1 + 2
    width = table.grid.stencil_size(k)
    x = theta / np.pi * (table.n_1 + 1)
    nearest = int(round(x))
    if abs(x - nearest) <= NODE_SNAP * max(1.0, x):
        return float(values[nearest])

    start = int(np.clip(np.ceil(x - width / 2), 0, n_nodes - width))
    interpolator = BarycentricInterpolator(np.arange(width, dtype=np.float64), values[start : start + width])
    return float(interpolator(x - start))
