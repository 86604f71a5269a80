"""
Scalar helpers shared by the double and extended-precision paths.

A "context" is either ``mpmath.fp`` (native doubles) or an independent
``mpmath.MPContext`` carrying its own working precision.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable

import mpmath
import numpy as np
from mpmath import libmp


def is_double(ctx: Any) -> bool:
    """True for the native double context."""
    return ctx is None or ctx is mpmath.fp


def to_number(value: Any, ctx: Any = None) -> Any:
    """Convert an exact rational, string or float into a scalar of ``ctx``."""
    if is_double(ctx):
        return float(value)
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / ctx.mpf(value.denominator)
    return ctx.mpf(value)


def to_array(values: Iterable[Any], ctx: Any = None) -> np.ndarray:
    """Build a float64 array (double) or an object array of mpf (extended)."""
    if is_double(ctx):
        return np.array([float(v) for v in values], dtype=np.float64)
    items = [to_number(v, ctx) for v in values]
    out = np.empty(len(items), dtype=object)
    out[:] = items
    return out


def full(size: int, value: Any, ctx: Any = None) -> np.ndarray:
    """Array of ``size`` copies of ``value`` in the arithmetic of ``ctx``."""
    return to_array([value] * size, ctx)


def format_number(value: Any, ctx: Any = None) -> str:
    """Decimal string that reads back to the identical scalar."""
    if is_double(ctx) or isinstance(value, float):
        return repr(float(value))
    return libmp.to_str(value._mpf_, libmp.repr_dps(ctx.prec))


def parse_number(text: str, ctx: Any = None) -> Any:
    """Inverse of :func:`format_number`."""
    if is_double(ctx):
        return float(text)
    return ctx.mpf(text)


def pi(ctx: Any = None) -> Any:
    """pi at the working precision of ``ctx``."""
    if is_double(ctx):
        return np.pi
    return ctx.mpf(ctx.pi)


def cos(theta: Any, ctx: Any = None) -> Any:
    """Elementwise cosine for scalars, float arrays and object arrays."""
    if is_double(ctx):
        return np.cos(theta)
    if isinstance(theta, np.ndarray):
        return np.frompyfunc(ctx.cos, 1, 1)(theta)
    return ctx.cos(theta)


def sin(theta: Any, ctx: Any = None) -> Any:
    """Elementwise sine for scalars, float arrays and object arrays."""
    if is_double(ctx):
        return np.sin(theta)
    if isinstance(theta, np.ndarray):
        return np.frompyfunc(ctx.sin, 1, 1)(theta)
    return ctx.sin(theta)


def grid_angle(j: Any, n_plus_1: int, ctx: Any = None) -> Any:
    """theta = j*pi/(n+1) with the rational part kept exact until the last step."""
    if is_double(ctx):
        if isinstance(j, np.ndarray):
            return j.astype(np.float64) * np.pi / n_plus_1
        return float(j) * np.pi / n_plus_1
    if isinstance(j, np.ndarray):
        return to_array([ctx.pi * int(v) / n_plus_1 for v in j], ctx)
    return ctx.pi * int(j) / n_plus_1
