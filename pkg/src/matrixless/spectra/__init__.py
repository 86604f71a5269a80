"""
Banded Toeplitz pencils and their eigenvalues by inertia bisection.
"""

from .banded import BandedToeplitz, ToeplitzPencil, build_toeplitz
from .eigensolver import (
    all_eigs,
    default_eig_tol,
    eig_by_index,
    eigs_by_indices,
    inertia_count,
    spectral_bounds,
)
from .oracle import charpoly_pencil_roots, dense_pencil_eigs
from .precision import PrecisionMode, PrecisionSpec

__all__ = [
    'BandedToeplitz',
    'ToeplitzPencil',
    'build_toeplitz',
    'all_eigs',
    'default_eig_tol',
    'eig_by_index',
    'eigs_by_indices',
    'inertia_count',
    'spectral_bounds',
    'charpoly_pencil_roots',
    'dense_pencil_eigs',
    'PrecisionMode',
    'PrecisionSpec',
]
