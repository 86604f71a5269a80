"""
matrixless - Matrix-less eigenvalue approximation.

Approximates every eigenvalue of the preconditioned Toeplitz matrix
X_n = T_n(g)^-1 T_n(l) from a small table of expansion coefficients,
computed once on a few nested grids.
"""

__version__ = "1.0.0"
__author__ = "matrixless developers"

from .expansion import ExpansionTable, GridSpec, approx_eigs, precompute
from .spectra import PrecisionSpec, all_eigs
from .symbols import SymbolPair, certify, check_monotone, example_pair

__all__ = [
    "ExpansionTable",
    "GridSpec",
    "approx_eigs",
    "precompute",
    "PrecisionSpec",
    "all_eigs",
    "SymbolPair",
    "certify",
    "check_monotone",
    "example_pair",
]
