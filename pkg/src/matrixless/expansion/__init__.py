"""
Nested grids, extrapolated expansion coefficients and eigenvalue reconstruction.
"""

from .extrapolation import extrapolate_node, extrapolate_nodes
from .grid import GridSpec, c_rule, grid_point, make_grid
from .interpolation import interp_coeff, interp_on_grid
from .precompute import precompute
from .reconstruct import approx_eigs, estimate_error_constant, reconstruct
from .table import ExpansionSpace, ExpansionTable, endpoint_weights, fill_endpoints

__all__ = [
    'extrapolate_node',
    'extrapolate_nodes',
    'GridSpec',
    'c_rule',
    'grid_point',
    'make_grid',
    'interp_coeff',
    'interp_on_grid',
    'precompute',
    'approx_eigs',
    'estimate_error_constant',
    'reconstruct',
    'ExpansionSpace',
    'ExpansionTable',
    'endpoint_weights',
    'fill_endpoints',
]
