"""
Brute-force reference solvers for small pencils.

Both build dense matrices and are meant for validation only.
"""
from __future__ import annotations

import mpmath
import numpy as np
from scipy.linalg import eigh

from ..symbols.symbol_pair import SymbolPair
from .banded import build_toeplitz


def dense_pencil_eigs(pair: SymbolPair, n: int) -> np.ndarray:
    """Eigenvalues of T_n(g)^-1 T_n(l) from scipy's symmetric-definite solver."""
    a = build_toeplitz(pair.l, n, truncate=True).to_dense()
    b = build_toeplitz(pair.g, n, truncate=True).to_dense()
    return np.sort(eigh(a, b, eigvals_only=True))


def charpoly_pencil_roots(pair: SymbolPair, n: int, digits: int = 100) -> np.ndarray:
    """
    Roots of det(T_n(l) - lambda T_n(g)) = 0.

    The determinant is evaluated at lambda = 0..n in high precision, the
    degree-n polynomial recovered from those values through a Vandermonde
    solve, and its roots taken with mpmath.polyroots.

    Args:
        pair: Symbol pair
        n: Matrix order (keep small, n <= 64)
        digits: Working precision of the determinant and root finding

    Returns:
        Sorted float64 array of the n real roots
    """
    ctx = mpmath.MPContext()
    ctx.dps = digits
    a_exact = build_toeplitz(pair.l, n, truncate=True).to_exact()
    b_exact = build_toeplitz(pair.g, n, truncate=True).to_exact()

    def to_mp(value):
        return ctx.mpf(value.numerator) / value.denominator

    a = ctx.matrix([[to_mp(v) for v in row] for row in a_exact])
    b = ctx.matrix([[to_mp(v) for v in row] for row in b_exact])

    points = [ctx.mpf(i) for i in range(n + 1)]
    values = ctx.matrix([ctx.det(a - x * b) for x in points])
    vandermonde = ctx.matrix([[x ** p for p in range(n + 1)] for x in points])
    coeffs = ctx.lu_solve(vandermonde, values)

    # polyroots wants the leading coefficient first
    roots = ctx.polyroots(
        [coeffs[p] for p in range(n, -1, -1)], maxsteps=500, extraprec=4 * digits
    )
    return np.sort(np.array([float(ctx.re(r)) for r in roots], dtype=np.float64))
