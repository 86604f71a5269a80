"""
Real cosine trigonometric polynomials c_0 + sum_k c_k cos(k theta).

Coefficients are stored as exact rationals. Evaluation goes through the
Chebyshev identity cos(k theta) = T_k(cos theta), so numpy's Chebyshev
routines do the work for both native doubles and mpmath object arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional

import numpy as np
from numpy.polynomial import chebyshev

from ..exceptions import InvalidSymbolError
from ..utils import numeric
from ..utils.validators import CoefficientLike, fraction_to_text, to_fraction


@dataclass(frozen=True)
class CosinePoly:
    """Even real cosine polynomial with exact rational coefficients c_0..c_m."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise InvalidSymbolError("A cosine polynomial needs at least one coefficient")
        if not all(isinstance(c, Fraction) for c in coeffs):
            raise InvalidSymbolError("Coefficients must be exact rationals; use from_coefficients()")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coefficients(cls, values: Iterable[CoefficientLike]) -> "CosinePoly":
        """
        Build from decimal text, ints, floats, Decimals or Fractions.

        Args:
            values: c_0..c_m, e.g. ["2", "-1", "-1"] for 2 - cos(t) - cos(2t)

        Returns:
            CosinePoly instance
        """
        return cls(tuple(to_fraction(v) for v in values))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def coefficients(self, ctx: Any = None) -> np.ndarray:
        """Coefficients in the arithmetic of ``ctx``."""
        return numeric.to_array(self.coeffs, ctx)

    def eval_cos(self, x: Any, ctx: Any = None) -> Any:
        """Evaluate the polynomial at x = cos(theta)."""
        return chebyshev.chebval(x, self.coefficients(ctx))

    def eval(self, theta: Any, ctx: Any = None) -> Any:
        """Evaluate c_0 + sum c_k cos(k theta) for a scalar or an array of angles."""
        return self.eval_cos(numeric.cos(theta, ctx), ctx)

    __call__ = eval

    def derivative_coeffs(self) -> tuple[Fraction, ...]:
        """Exact Chebyshev coefficients of P' where p(theta) = P(cos theta)."""
        if self.is_constant:
            return (Fraction(0),)
        series = np.empty(len(self.coeffs), dtype=object)
        series[:] = self.coeffs
        return tuple(Fraction(c) for c in chebyshev.chebder(series))

    def derivative(self, theta: Any, ctx: Any = None) -> Any:
        """d/dtheta p(theta) = -sin(theta) * P'(cos theta)."""
        prime = numeric.to_array(self.derivative_coeffs(), ctx)
        x = numeric.cos(theta, ctx)
        return -numeric.sin(theta, ctx) * chebyshev.chebval(x, prime)

    def band(self) -> tuple[Fraction, ...]:
        """Toeplitz band a_0..a_m: a_0 = c_0 and a_k = c_k / 2."""
        return (self.coeffs[0],) + tuple(c / 2 for c in self.coeffs[1:])

    def fourier_coeffs(self, n: int) -> np.ndarray:
        """
        Fourier coefficients a_{-(n-1)}..a_{n-1}.

        Args:
            n: Number of non-negative indices (n >= 1)

        Returns:
            Array of length 2n - 1, even about its centre
        """
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        band = self.band()
        half = np.zeros(n, dtype=np.float64)
        upto = min(n, len(band))
        half[:upto] = [float(a) for a in band[:upto]]
        return np.concatenate([half[:0:-1], half])

    def endpoint_moment(self, r: int, at_pi: bool = False) -> Fraction:
        """
        sum_k k^(2r) c_k s_k with s_k = 1 at theta = 0 and (-1)^k at theta = pi.

        Up to the factor (-1)^r / (2r)! this is the 2r-th derivative at the endpoint.
        """
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            sign = -1 if (at_pi and k % 2) else 1
            total += sign * c * k ** (2 * r)
        return total

    def value_at_endpoint(self, at_pi: bool = False) -> Fraction:
        """Exact p(0) or p(pi)."""
        return self.endpoint_moment(0, at_pi)

    def abs_sum(self) -> Fraction:
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    def to_text(self) -> list[str]:
        """Coefficients as plain decimal strings ("p/q" for non-terminating ones)."""
        return [fraction_to_text(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = [fraction_to_text(self.coeffs[0])]
        for k, c in enumerate(self.coeffs[1:], start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factor = "" if mag == 1 else f"{fraction_to_text(mag)}*"
            angle = "cos(t)" if k == 1 else f"cos({k}t)"
            terms.append(f"{sign} {factor}{angle}")
        return " ".join(terms)


def eval_poly(p: CosinePoly, theta: Any, ctx: Optional[Any] = None) -> Any:
    """Return c_0 + sum_{k=1}^{m} c_k cos(k theta)."""
    return p.eval(theta, ctx)


def fourier_coeffs(p: CosinePoly, n: int) -> np.ndarray:
    """Return a_{-(n-1)}..a_{n-1} of ``p`` (see CosinePoly.fourier_coeffs)."""
    return p.fourier_coeffs(n)
