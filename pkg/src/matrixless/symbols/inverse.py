"""
Inverse of a monotone increasing f on [0, pi].
"""
from __future__ import annotations

from typing import Any, Optional

from ..config import Config
from ..exceptions import NoBracketError, NonConvergenceError
from ..utils import numeric
from .symbol_pair import SymbolPair


def default_inverse_tol(ctx: Any = None) -> Any:
    """1e-15 for doubles, 10^-(d-5) for a d-digit extended context."""
    if numeric.is_double(ctx):
        return 1e-15
    return ctx.mpf(10) ** (-(ctx.dps - 5))


def f_inverse(
    pair: SymbolPair,
    phi: Any,
    tol: Optional[Any] = None,
    ctx: Any = None,
    max_iter: Optional[int] = None,
) -> Any:
    """
    Solve f(theta) = phi for theta in (0, pi).

    The bracket [a, b] with f(a) < phi < f(b) is kept throughout. Bisection
    narrows it to Config.INVERSE_BISECT_WIDTH, then Newton steps are taken
    while they land strictly inside the bracket; any other step bisects.

    Args:
        pair: Certified symbol pair
        phi: Target value in (m_f, M_f)
        tol: Residual tolerance; converged when |f(theta) - phi| <= tol * max(1, |phi|)
        ctx: None for doubles or an mpmath context
        max_iter: Iteration cap (default Config.INVERSE_MAX_ITER)

    Returns:
        theta in the arithmetic of ``ctx``

    Raises:
        NoBracketError: phi outside (m_f, M_f)
        NonConvergenceError: tolerance not reached within the cap, or the bracket
            shrank to adjacent representable numbers first
    """
    pair.require_certified()
    tol = default_inverse_tol(ctx) if tol is None else tol
    max_iter = Config.INVERSE_MAX_ITER if max_iter is None else max_iter
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")

    phi = numeric.to_number(phi, ctx)
    low = numeric.to_number(pair.m_f, ctx)
    high = numeric.to_number(pair.M_f, ctx)
    if not low < phi < high:
        raise NoBracketError(f"phi = {phi} outside ({pair.m_f}, {pair.M_f})")

    target = tol * max(1, abs(phi))
    width = Config.INVERSE_BISECT_WIDTH
    a = numeric.to_number(0, ctx)
    b = numeric.pi(ctx)
    theta = (a + b) / 2

    for _ in range(max_iter):
        residual = pair.f_eval(theta, ctx) - phi
        if abs(residual) <= target:
            return theta
        if residual < 0:
            a = theta
        else:
            b = theta

        step = None
        if b - a <= width:
            slope = pair.f_prime(theta, ctx)
            if slope > 0:
                candidate = theta - residual / slope
                if a < candidate < b and candidate != theta:
                    step = candidate
        if step is None:
            step = (a + b) / 2
            if not a < step < b:
                raise NonConvergenceError(
                    f"bracket collapsed at theta = {theta} with residual {residual}; "
                    f"tol = {tol} is too tight for the working precision"
                )
        theta = step

    raise NonConvergenceError(f"f_inverse did not reach tol = {tol} for phi = {phi} in {max_iter} steps")
