"""
Pydantic schema for command-line runs.

A run is described by one config document (TOML or JSON) plus flag
overrides. Everything is validated here, before any computation starts.
"""
from __future__ import annotations

import json
import tomllib
from decimal import Decimal
from pathlib import Path
from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import Config
from ..exceptions import InvalidSymbolError
from ..expansion.grid import GridSpec, STENCIL_EXTRA
from ..spectra.precision import DOUBLE_DIGITS, MIN_EXTENDED_DIGITS, PrecisionSpec
from ..symbols.examples import EXAMPLE_SYMBOLS
from ..symbols.symbol_pair import SymbolPair
from ..utils.validators import fraction_to_text, parse_coefficients, parse_int_list


class RunConfig(BaseModel):
    """Validated parameters of one matrixless run."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    l: Optional[List[str]] = Field(default=None, description="Cosine coefficients of l, exact decimal or p/q text")
    g: Optional[List[str]] = Field(default=None, description="Cosine coefficients of g")
    example: Optional[int] = Field(default=None, description="Built-in example pair (1, 2 or 3)")
    n1: int = Field(default=Config.DEFAULT_N1, ge=1, description="Coarse grid size n_1")
    K: int = Field(default=Config.DEFAULT_K, ge=1, description="Number of levels")
    space: Literal["s", "lambda"] = Field(default="s", description="Expansion variable")
    digits: int = Field(default=Config.DEFAULT_DIGITS, ge=1, description="Precompute precision in decimal digits")
    oracle_digits: int = Field(default=DOUBLE_DIGITS, ge=1, description="Reference spectrum precision")
    orders: List[int] = Field(default_factory=lambda: list(Config.DEFAULT_ORDERS), description="Matrix orders of a sweep")
    levels: Optional[List[int]] = Field(default=None, description="Levels of a sweep (default 1..K)")
    out: Optional[str] = Field(default=None, description="Output file or directory")
    jobs: int = Field(default=Config.WORKERS, ge=1, description="Worker processes")
    table: Optional[str] = Field(default=None, description="Expansion table file")
    n: Optional[int] = Field(default=None, ge=1, description="Matrix order to approximate")
    k: Optional[int] = Field(default=None, ge=1, description="Level to approximate at")
    samples: int = Field(default=Config.MONOTONE_SAMPLES, ge=2, description="Monotonicity sample count")

    @field_validator('l', 'g', mode='before')
    @classmethod
    def normalize_coefficients(cls, v: Any) -> Optional[List[str]]:
        """Accept text or numeric lists and store exact rational text."""
        if v is None:
            return None
        try:
            return [fraction_to_text(c) for c in parse_coefficients(v)]
        except InvalidSymbolError as e:
            raise ValueError(str(e)) from e

    @field_validator('orders', 'levels', mode='before')
    @classmethod
    def parse_integers(cls, v: Any) -> Any:
        if v is None or isinstance(v, list):
            return v
        return parse_int_list(v)

    @field_validator('orders')
    @classmethod
    def validate_orders(cls, v: List[int]) -> List[int]:
        if any(n < 1 for n in v):
            raise ValueError(f"matrix orders must be positive, got {v}")
        return v

    @field_validator('digits', 'oracle_digits')
    @classmethod
    def validate_digits(cls, v: int) -> int:
        if DOUBLE_DIGITS < v < MIN_EXTENDED_DIGITS:
            raise ValueError(
                f"{v} digits: use <= {DOUBLE_DIGITS} for double or >= {MIN_EXTENDED_DIGITS} for extended"
            )
        return v

    @field_validator('example')
    @classmethod
    def validate_example(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v not in EXAMPLE_SYMBOLS:
            raise ValueError(f"unknown example {v}; choose one of {sorted(EXAMPLE_SYMBOLS)}")
        return v

    @model_validator(mode='after')
    def check_consistency(self) -> "RunConfig":
        if self.example is not None:
            l, g, _ = EXAMPLE_SYMBOLS[self.example]
            if self.l is None:
                self.l = list(l)
            if self.g is None:
                self.g = list(g)
        if (self.l is None) != (self.g is None):
            raise ValueError("both l and g must be given")
        if self.n1 < self.K + STENCIL_EXTRA:
            raise ValueError(f"n1={self.n1} too small for K={self.K} (need n1 >= K + {STENCIL_EXTRA})")
        if self.levels is not None and any(not 1 <= k <= self.K for k in self.levels):
            raise ValueError(f"levels {self.levels} outside 1..{self.K}")
        return self

    # ------------------------------------------------------------------
    # Loading
    # ------------------------------------------------------------------

    @classmethod
    def read_document(cls, path: Union[str, Path]) -> dict:
        """
        Read a config document; ``.json`` is JSON, anything else TOML.

        Floats are read as Decimal so coefficients such as 17.5 stay exact.
        """
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json":
            return json.loads(text, parse_float=Decimal)
        return tomllib.loads(text, parse_float=Decimal)

    @classmethod
    def from_sources(cls, path: Optional[Union[str, Path]] = None, **overrides: Any) -> "RunConfig":
        """Config document (optional) overridden by every non-None keyword."""
        data = cls.read_document(path) if path is not None else {}
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls.model_validate(data)

    # ------------------------------------------------------------------
    # Derived objects
    # ------------------------------------------------------------------

    def has_symbols(self) -> bool:
        return self.l is not None and self.g is not None

    def pair(self) -> SymbolPair:
        """Uncertified symbol pair."""
        if not self.has_symbols():
            raise InvalidSymbolError("no symbols given: use --l/--g, --example or a config file")
        return SymbolPair.from_coefficients(self.l, self.g)

    def grid(self) -> GridSpec:
        return GridSpec(self.n1, self.K)

    def precision(self) -> PrecisionSpec:
        return PrecisionSpec.from_digits(self.digits)

    def oracle_precision(self) -> PrecisionSpec:
        return PrecisionSpec.from_digits(self.oracle_digits)

    def sweep_levels(self, K: Optional[int] = None) -> List[int]:
        """Configured levels, or every level 1..K of the table."""
        if self.levels is not None:
            return list(self.levels)
        return list(range(1, (K or self.K) + 1))
