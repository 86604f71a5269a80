"""
The symbol pair (l, g) and the quotient f = l / g.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

import numpy as np
from numpy.polynomial import chebyshev

from ..config import Config
from ..exceptions import (
    InvalidSymbolError,
    NonPositiveSymbolError,
    NotMonotoneError,
    SymbolDivisionError,
)
from ..logger import get_logger
from ..models import MonotoneVerdict
from ..utils import numeric
from ..utils.validators import CoefficientLike, fraction_to_text
from .cosine_poly import CosinePoly

logger = get_logger(__name__)


def _exact_quotient(l: CosinePoly, g: CosinePoly) -> Optional[CosinePoly]:
    """l / g as a cosine polynomial when the Chebyshev division leaves no remainder."""
    num = np.empty(len(l.coeffs), dtype=object)
    num[:] = l.coeffs
    den = np.empty(len(g.coeffs), dtype=object)
    den[:] = g.coeffs
    try:
        quo, rem = chebyshev.chebdiv(num, den)
    except (ZeroDivisionError, ValueError, TypeError):
        return None
    if any(Fraction(r) != 0 for r in rem):
        return None
    return CosinePoly(tuple(Fraction(q) for q in quo))


@dataclass(frozen=True)
class SymbolPair:
    """
    Symbols l and g of the pencil (T_n(l), T_n(g)) and the quotient f = l / g.

    Attributes:
        l: Numerator symbol
        g: Preconditioner symbol (positive on (0, pi))
        m_f: Exact inf of f on [0, pi], set by certification
        M_f: Exact sup of f on [0, pi], set by certification
        monotone_certified: Set by check_monotone when every hypothesis holds
        quotient: l / g as a cosine polynomial when g divides l exactly
    """

    l: CosinePoly
    g: CosinePoly
    m_f: Optional[Fraction] = None
    M_f: Optional[Fraction] = None
    monotone_certified: bool = False
    quotient: Optional[CosinePoly] = field(init=False, default=None, compare=False, repr=False)

    def __post_init__(self):
        if all(c == 0 for c in self.g.coeffs):
            raise InvalidSymbolError("g is identically zero")
        object.__setattr__(self, "quotient", _exact_quotient(self.l, self.g))

    @classmethod
    def from_coefficients(
        cls,
        l: Iterable[CoefficientLike],
        g: Iterable[CoefficientLike],
    ) -> "SymbolPair":
        """Build an uncertified pair from two coefficient lists."""
        return cls(CosinePoly.from_coefficients(l), CosinePoly.from_coefficients(g))

    # ------------------------------------------------------------------
    # Derived properties
    # ------------------------------------------------------------------

    @property
    def band(self) -> int:
        """Half-bandwidth of the pencil."""
        return max(self.l.degree, self.g.degree)

    @property
    def g_floor(self) -> float:
        """|g| below this value counts as a zero of g."""
        return Config.G_FLOOR_REL * float(self.g.abs_sum())

    @property
    def is_constant_ratio(self) -> bool:
        """True when l is a scalar multiple of g (f constant)."""
        return self.quotient is not None and self.quotient.is_constant

    @property
    def span(self) -> Optional[Fraction]:
        if self.m_f is None or self.M_f is None:
            return None
        return self.M_f - self.m_f

    def digest(self) -> str:
        """Content digest of the two coefficient lists."""
        payload = json.dumps({"l": self.l.to_text(), "g": self.g.to_text()}, sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def require_certified(self) -> None:
        """Raise unless check_monotone certified this pair."""
        if not self.monotone_certified:
            raise NotMonotoneError(
                "symbol pair is not certified monotone; run 'matrixless certify' first"
            )

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def endpoint_limit(self, at_pi: bool = False) -> Fraction:
        """
        Exact limit of f at theta = 0 (or pi).

        Where g vanishes at the endpoint the limit is the ratio of the first
        even-order moments that do not vanish for g.
        """
        if self.quotient is not None:
            return self.quotient.value_at_endpoint(at_pi)
        for r in range(self.g.degree + 1):
            mg = self.g.endpoint_moment(r, at_pi)
            ml = self.l.endpoint_moment(r, at_pi)
            if mg != 0:
                return ml / mg
            if ml != 0:
                break
        where = "pi" if at_pi else "0"
        raise SymbolDivisionError(f"f = l/g is unbounded at theta = {where}")

    def _guarded_divide(
        self, num: Any, den: Any, g: Any, theta: Any, ctx: Any, derivative: bool
    ) -> Any:
        """num / den where |g| clears the floor, exact endpoint values elsewhere."""
        small = np.asarray(abs(g) < self.g_floor, dtype=bool)
        if not small.any():
            return num / den
        if not isinstance(den, np.ndarray):
            return self._endpoint_value(theta, ctx, derivative)
        safe = den.copy()
        safe[small] = numeric.to_number(1, ctx)
        values = num / safe
        for i in np.flatnonzero(small):
            values[i] = self._endpoint_value(theta[i], ctx, derivative)
        return values

    def _endpoint_value(self, theta: Any, ctx: Any, derivative: bool) -> Any:
        if theta == 0 or theta == numeric.pi(ctx):
            if derivative:
                return numeric.to_number(0, ctx)
            return numeric.to_number(self.endpoint_limit(at_pi=theta != 0), ctx)
        raise SymbolDivisionError(
            f"|g(theta)| below floor {self.g_floor:.3g} at theta = {float(theta):.17g}"
        )

    def f_eval(self, theta: Any, ctx: Any = None) -> Any:
        """
        Evaluate f = l / g at a scalar or an array of angles in [0, pi].

        Raises:
            SymbolDivisionError: |g| below the floor away from the endpoints
        """
        if self.quotient is not None:
            return self.quotient.eval(theta, ctx)
        g = self.g.eval(theta, ctx)
        return self._guarded_divide(self.l.eval(theta, ctx), g, g, theta, ctx, False)

    def f_prime(self, theta: Any, ctx: Any = None) -> Any:
        """Derivative f' by the quotient rule (or directly from the simplified quotient)."""
        if self.quotient is not None:
            return self.quotient.derivative(theta, ctx)
        g = self.g.eval(theta, ctx)
        num = self.l.derivative(theta, ctx) * g - self.l.eval(theta, ctx) * self.g.derivative(theta, ctx)
        return self._guarded_divide(num, g * g, g, theta, ctx, True)

    def __call__(self, theta: Any, ctx: Any = None) -> Any:
        return self.f_eval(theta, ctx)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "l": self.l.to_text(),
            "g": self.g.to_text(),
            "digest": self.digest(),
            "monotone_certified": self.monotone_certified,
            "m_f": None if self.m_f is None else fraction_to_text(self.m_f),
            "M_f": None if self.M_f is None else fraction_to_text(self.M_f),
            "quotient": None if self.quotient is None else self.quotient.to_text(),
        }


def f_eval(pair: SymbolPair, theta: Any, ctx: Any = None) -> Any:
    """Return l(theta) / g(theta)."""
    return pair.f_eval(theta, ctx)


def check_monotone(pair: SymbolPair, samples: Optional[int] = None) -> MonotoneVerdict:
    """
    Certify positivity of g and strict monotonicity of f on a dense sample.

    Samples are theta_i = i*pi/(samples+1), i = 1..samples. Besides the strict
    increase of consecutive values, the sign of f' is checked at every sample.
    A failing check is reported in the verdict, never raised.

    Args:
        pair: Symbol pair to check
        samples: Number of interior samples (default Config.MONOTONE_SAMPLES)

    Returns:
        MonotoneVerdict whose ``pair`` carries the certification
    """
    samples = Config.MONOTONE_SAMPLES if samples is None else samples
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")

    theta = np.arange(1, samples + 1, dtype=np.float64) * np.pi / (samples + 1)
    quotient_text = str(pair.quotient) if pair.quotient is not None else None

    g_values = pair.g.eval(theta)
    g_bad = theta[g_values <= pair.g_floor]
    if g_bad.size:
        logger.warning("g <= %.3g at %d of %d samples", pair.g_floor, g_bad.size, samples)
        return MonotoneVerdict(
            certified=False,
            positive=False,
            samples=samples,
            g_violations=g_bad.tolist(),
            quotient=quotient_text,
            pair=dataclasses.replace(pair, m_f=None, M_f=None, monotone_certified=False),
        )

    f_values = pair.f_eval(theta)
    bad = np.flatnonzero(np.diff(f_values) <= 0)
    violations = [(float(theta[i]), float(theta[i + 1])) for i in bad]

    scale = max(1.0, float(np.max(np.abs(f_values))))
    slopes = pair.f_prime(theta)
    derivative_bad = theta[slopes < -1e-12 * scale].tolist()

    m_f = M_f = None
    try:
        m_f = pair.endpoint_limit(at_pi=False)
        M_f = pair.endpoint_limit(at_pi=True)
    except SymbolDivisionError as e:
        logger.warning("Endpoint limit unavailable: %s", e)

    certified = (
        not violations
        and not derivative_bad
        and m_f is not None
        and M_f is not None
        and m_f < M_f
    )
    if certified:
        logger.info("Certified f on %d samples: range (%s, %s)", samples, m_f, M_f)
    else:
        logger.warning(
            "Monotonicity check failed: %d non-increasing pairs, %d negative slopes",
            len(violations), len(derivative_bad),
        )

    return MonotoneVerdict(
        certified=certified,
        positive=True,
        samples=samples,
        m_f=m_f if certified else None,
        M_f=M_f if certified else None,
        violations=violations,
        derivative_violations=derivative_bad,
        quotient=quotient_text,
        pair=dataclasses.replace(
            pair,
            m_f=m_f if certified else None,
            M_f=M_f if certified else None,
            monotone_certified=certified,
        ),
    )


def certify(pair: SymbolPair, samples: Optional[int] = None) -> SymbolPair:
    """
    Return the certified pair or raise the matching hypothesis violation.

    Raises:
        NonPositiveSymbolError: g is not positive on the sample
        NotMonotoneError: f is not strictly increasing
    """
    verdict = check_monotone(pair, samples)
    if verdict.certified:
        return verdict.pair
    if not verdict.positive:
        raise NonPositiveSymbolError(verdict.reason)
    raise NotMonotoneError(verdict.reason)
