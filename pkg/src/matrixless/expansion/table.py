"""
The expansion table: extrapolated coefficients on the coarse grid.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from ..config import Config
from ..exceptions import DigestMismatchError, LevelOutOfRangeError, TableFormatError
from ..logger import get_logger
from ..spectra.precision import PrecisionSpec
from ..symbols.symbol_pair import SymbolPair
from ..utils import numeric
from ..utils.files import read_json, write_json_atomic
from .grid import GridSpec

logger = get_logger(__name__)

DOCUMENT_KIND = "matrixless-expansion-table"


class ExpansionSpace(str, Enum):
    """Variable in which the expansion is taken."""

    S_VARIABLE = "s"
    LAMBDA = "lambda"


@dataclass(frozen=True)
class ExpansionTable:
    """
    Coefficients rho_k (s-space) or c_k (lambda-space) at sigma_0..sigma_{n_1+1}.

    Values are kept as decimal strings at the precision of the precompute;
    ``values`` gives the float64 view used by reconstruction.

    Attributes:
        space: Expansion variable
        grid: Nested grid the table was computed on
        coeffs: coeffs[k-1][i] for node i = 0..n_1+1; None where not yet filled
        l: Coefficient text of l
        g: Coefficient text of g
        digest: Digest of the symbol pair
        precision: Precision of the eigenvalue computations
        provenance: Free-form run information (timings, diagnostics)
    """

    space: ExpansionSpace
    grid: GridSpec
    coeffs: tuple[tuple[Optional[str], ...], ...]
    l: tuple[str, ...]
    g: tuple[str, ...]
    digest: str
    precision: PrecisionSpec
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "space", ExpansionSpace(self.space))
        if len(self.coeffs) != self.grid.K:
            raise TableFormatError(f"expected {self.grid.K} coefficient rows, got {len(self.coeffs)}")
        for k, row in enumerate(self.coeffs, start=1):
            if len(row) != self.grid.n_1 + 2:
                raise TableFormatError(
                    f"row k={k} has {len(row)} entries, expected {self.grid.n_1 + 2}"
                )

    @property
    def K(self) -> int:
        return self.grid.K

    @property
    def n_1(self) -> int:
        return self.grid.n_1

    @property
    def endpoints_filled(self) -> bool:
        return all(row[0] is not None and row[-1] is not None for row in self.coeffs)

    @cached_property
    def values(self) -> np.ndarray:
        """float64 array of shape (K, n_1 + 2); NaN where a value is missing."""
        out = np.array(
            [[math.nan if v is None else float(v) for v in row] for row in self.coeffs],
            dtype=np.float64,
        )
        out.setflags(write=False)
        return out

    def level(self, k: int) -> np.ndarray:
        """Coefficient k at every node."""
        self.check_level(k)
        return self.values[k - 1]

    def check_level(self, k: int) -> None:
        if not 1 <= k <= self.K:
            raise LevelOutOfRangeError(f"level k={k} outside 1..{self.K}")

    def check_pair(self, pair: SymbolPair) -> None:
        """Raise DigestMismatchError unless the table belongs to ``pair``."""
        if pair.digest() != self.digest:
            raise DigestMismatchError(
                f"table was computed for l={list(self.l)}, g={list(self.g)} "
                f"(digest {self.digest[:12]}), not for the given symbols "
                f"(digest {pair.digest()[:12]})"
            )

    def exact_values(self, k: int) -> list[Any]:
        """Coefficient k at every node in the arithmetic of the table's precision."""
        self.check_level(k)
        ctx = self.precision.context()
        return [None if v is None else numeric.parse_number(v, ctx) for v in self.coeffs[k - 1]]

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------

    def to_document(self) -> dict:
        """Self-describing JSON document with decimal strings."""
        return {
            "kind": DOCUMENT_KIND,
            "format_version": Config.TABLE_FORMAT_VERSION,
            "symbols": {"l": list(self.l), "g": list(self.g), "digest": self.digest},
            "space": self.space.value,
            "n_1": self.n_1,
            "K": self.K,
            "precision": self.precision.to_dict(),
            "endpoints_filled": self.endpoints_filled,
            "provenance": self.provenance,
            "nodes": [
                {
                    "j": i,
                    "sigma": f"{i}/{self.n_1 + 1}",
                    "rho": [self.coeffs[k][i] for k in range(self.K)],
                }
                for i in range(self.n_1 + 2)
            ],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "ExpansionTable":
        """
        Rebuild a table from its JSON document.

        Raises:
            TableFormatError: wrong kind, version or shape, or corrupt values
        """
        if not isinstance(doc, dict) or doc.get("kind") != DOCUMENT_KIND:
            raise TableFormatError("not an expansion table document")
        version = doc.get("format_version")
        if version != Config.TABLE_FORMAT_VERSION:
            raise TableFormatError(
                f"unsupported table format version {version!r} "
                f"(expected {Config.TABLE_FORMAT_VERSION})"
            )
        try:
            n_1, K = int(doc["n_1"]), int(doc["K"])
            grid = GridSpec(n_1, K)
            symbols = doc["symbols"]
            l, g = tuple(symbols["l"]), tuple(symbols["g"])
            prec_doc = doc["precision"]
            precision = PrecisionSpec(prec_doc["mode"], int(prec_doc["digits"]))
            nodes = doc["nodes"]
            if len(nodes) != n_1 + 2:
                raise TableFormatError(f"expected {n_1 + 2} nodes, got {len(nodes)}")
            rows: list[list[Optional[str]]] = [[] for _ in range(K)]
            for i, node in enumerate(nodes):
                if int(node["j"]) != i or Fraction(node["sigma"]) != Fraction(i, n_1 + 1):
                    raise TableFormatError(f"node {i} has inconsistent coordinates")
                rho = node["rho"]
                if len(rho) != K:
                    raise TableFormatError(f"node {i} has {len(rho)} coefficients, expected {K}")
                for k, value in enumerate(rho):
                    if value is not None:
                        value = str(value)
                        if not math.isfinite(float(value)):
                            raise TableFormatError(f"non-finite coefficient at node {i}, k={k + 1}")
                    rows[k].append(value)
        except TableFormatError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise TableFormatError(f"malformed expansion table: {e}") from e

        pair = SymbolPair.from_coefficients(l, g)
        if pair.digest() != symbols.get("digest"):
            raise TableFormatError("stored digest does not match the stored symbol coefficients")

        return cls(
            space=ExpansionSpace(doc["space"]),
            grid=grid,
            coeffs=tuple(tuple(r) for r in rows),
            l=l,
            g=g,
            digest=symbols["digest"],
            precision=precision,
            provenance=dict(doc.get("provenance") or {}),
        )

    def save(self, path: Union[str, Path]) -> Path:
        """Write the table document atomically."""
        out = write_json_atomic(path, self.to_document())
        logger.info("Expansion table written to %s", out)
        return out

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExpansionTable":
        """Read a table document written by save()."""
        try:
            doc = read_json(path)
        except ValueError as e:
            raise TableFormatError(f"{path}: not valid JSON ({e})") from e
        return cls.from_document(doc)


def endpoint_weights(width: int) -> list[int]:
    """
    Weights w_i with p(0) = sum_i w_i p(i), i = 1..width, for p of degree width - 1.

    They follow from the vanishing width-th forward difference on equispaced nodes.
    """
    return [(-1) ** (i + 1) * comb(width, i) for i in range(1, width + 1)]


def fill_endpoints(table: ExpansionTable) -> ExpansionTable:
    """
    Set rho_k(0) and rho_k(pi) by polynomial extrapolation.

    For level k the degree-(K-k+4) polynomial through the K-k+5 interior nodes
    nearest to each endpoint is evaluated at that endpoint.
    """
    ctx = table.precision.context()
    n_1 = table.n_1
    rows = []
    for k in table.grid.levels:
        values = table.exact_values(k)
        interior = values[1 : n_1 + 1]
        if any(v is None for v in interior):
            raise TableFormatError(f"interior nodes of level k={k} are not populated")
        width = table.grid.stencil_size(k)
        weights = endpoint_weights(width)
        left = sum(w * interior[i] for i, w in enumerate(weights))
        right = sum(w * interior[n_1 - 1 - i] for i, w in enumerate(weights))
        row = list(table.coeffs[k - 1])
        row[0] = numeric.format_number(left, ctx)
        row[-1] = numeric.format_number(right, ctx)
        rows.append(tuple(row))
    return dataclasses.replace(table, coeffs=tuple(rows))
