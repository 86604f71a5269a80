"""
Working precision of the spectral kernels.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from fractions import Fraction
from typing import Any, Optional

import mpmath

from ..config import Config
from ..exceptions import PrecisionError


class PrecisionMode(str, Enum):
    DOUBLE = "double"
    EXTENDED = "extended"


DOUBLE_DIGITS = 16
MIN_EXTENDED_DIGITS = 20


@lru_cache(maxsize=None)
def _mp_context(digits: int) -> mpmath.MPContext:
    # shared per digit count; never mutated after creation
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


@dataclass(frozen=True)
class PrecisionSpec:
    """
    Scalar arithmetic used by factorization and bisection.

    Attributes:
        mode: Native doubles or mpmath big-floats
        digits: Significant decimal digits (16 for doubles, >= 20 when extended)
    """

    mode: PrecisionMode = PrecisionMode.DOUBLE
    digits: int = DOUBLE_DIGITS

    def __post_init__(self):
        object.__setattr__(self, "mode", PrecisionMode(self.mode))
        if self.mode is PrecisionMode.EXTENDED and self.digits < MIN_EXTENDED_DIGITS:
            raise PrecisionError(
                f"extended precision needs at least {MIN_EXTENDED_DIGITS} digits, got {self.digits}"
            )
        if self.mode is PrecisionMode.DOUBLE:
            object.__setattr__(self, "digits", DOUBLE_DIGITS)

    @classmethod
    def double(cls) -> "PrecisionSpec":
        return cls(PrecisionMode.DOUBLE, DOUBLE_DIGITS)

    @classmethod
    def extended(cls, digits: int) -> "PrecisionSpec":
        return cls(PrecisionMode.EXTENDED, digits)

    @classmethod
    def from_digits(cls, digits: int) -> "PrecisionSpec":
        """<= 16 digits selects doubles, >= 20 the extended path; 17..19 is rejected."""
        if digits < 1:
            raise PrecisionError(f"digits must be positive, got {digits}")
        if digits <= DOUBLE_DIGITS:
            return cls.double()
        if digits < MIN_EXTENDED_DIGITS:
            raise PrecisionError(
                f"{digits} digits is neither double (<= {DOUBLE_DIGITS}) "
                f"nor extended (>= {MIN_EXTENDED_DIGITS})"
            )
        return cls.extended(digits)

    @property
    def is_double(self) -> bool:
        return self.mode is PrecisionMode.DOUBLE

    def context(self) -> Any:
        """``mpmath.fp`` for doubles, otherwise the shared MPContext at ``digits``."""
        if self.is_double:
            return mpmath.fp
        return _mp_context(self.digits)

    def eig_tol(self, span: Optional[Fraction] = None) -> Any:
        """
        Default absolute bisection width.

        Doubles use Config.ORACLE_TOL; extended uses span * 10^-(digits-8).
        """
        if self.is_double:
            return Config.ORACLE_TOL
        span = Fraction(1) if span is None or span == 0 else Fraction(span)
        return Fraction(span) * Fraction(1, 10 ** (self.digits - 8))

    def pivot_floor(self, band_scale: float) -> float:
        """Pivots with magnitude below 10^-(digits+10) * band_scale count as breakdown."""
        return float(band_scale) * 10.0 ** (-(self.digits + 10))

    def nudge(self, span: Fraction) -> Fraction:
        """Base perturbation 2^-(digits/2) * (M_f - m_f) used after a pivot breakdown."""
        return Fraction(span) / 2 ** (self.digits // 2)

    def label(self) -> str:
        return "double" if self.is_double else f"{self.digits}-digit"

    def to_dict(self) -> dict:
        return {"mode": self.mode.value, "digits": self.digits}
