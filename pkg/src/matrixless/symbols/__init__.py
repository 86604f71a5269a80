"""
Cosine-polynomial symbols, the quotient f = l/g and its inverse.
"""

from .cosine_poly import CosinePoly, eval_poly, fourier_coeffs
from .examples import EXAMPLE_SYMBOLS, example_pair
from .inverse import default_inverse_tol, f_inverse
from .symbol_pair import SymbolPair, certify, check_monotone, f_eval

__all__ = [
    'CosinePoly',
    'eval_poly',
    'fourier_coeffs',
    'EXAMPLE_SYMBOLS',
    'example_pair',
    'default_inverse_tol',
    'f_inverse',
    'SymbolPair',
    'certify',
    'check_monotone',
    'f_eval',
]
