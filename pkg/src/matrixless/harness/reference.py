"""
Reference spectra with an on-disk cache.
"""
from __future__ import annotations

from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from ..config import Config
from ..exceptions import TableFormatError
from ..logger import get_logger
from ..spectra.eigensolver import all_eigs, default_eig_tol
from ..spectra.precision import PrecisionSpec
from ..symbols.symbol_pair import SymbolPair
from ..utils import numeric
from ..utils.files import read_json, write_json_atomic

logger = get_logger(__name__)

CACHE_KIND = "matrixless-reference-spectrum"


class ReferenceCache:
    """
    Directory of cached spectra keyed by (pair digest, n, precision).

    Files are written to a temporary name and renamed into place, so
    concurrent sweeps never read a partial file.
    """

    def __init__(self, directory: Optional[Union[str, Path]] = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else Config.CACHE_DIR
        self.enabled = enabled

    def path(self, pair: SymbolPair, n: int, prec: PrecisionSpec) -> Path:
        return self.directory / f"{pair.digest()[:16]}-n{n}-{prec.label()}.json"

    def load(self, pair: SymbolPair, n: int, prec: PrecisionSpec, tol: Any) -> Optional[np.ndarray]:
        """Cached spectrum, or None on a miss (absent, other tolerance, other pair)."""
        if not self.enabled:
            return None
        path = self.path(pair, n, prec)
        if not path.exists():
            return None
        try:
            doc = read_json(path)
        except (OSError, ValueError) as e:
            logger.warning("Ignoring unreadable cache file %s: %s", path, e)
            return None
        if (
            doc.get("kind") != CACHE_KIND
            or doc.get("digest") != pair.digest()
            or doc.get("n") != n
            or doc.get("tol") != str(tol)
        ):
            return None
        values = doc.get("values")
        if not isinstance(values, list) or len(values) != n:
            raise TableFormatError(f"cache file {path} is corrupt")
        ctx = prec.context()
        logger.debug("Reference spectrum n=%d loaded from %s", n, path)
        return numeric.to_array([numeric.parse_number(v, ctx) for v in values], ctx)

    def store(self, pair: SymbolPair, n: int, prec: PrecisionSpec, tol: Any, values: np.ndarray) -> None:
        if not self.enabled:
            return
        ctx = prec.context()
        write_json_atomic(
            self.path(pair, n, prec),
            {
                "kind": CACHE_KIND,
                "digest": pair.digest(),
                "n": n,
                "precision": prec.to_dict(),
                "tol": str(tol),
                "values": [numeric.format_number(v, ctx) for v in values],
            },
        )


def reference_spectrum(
    pair: SymbolPair,
    n: int,
    prec: Optional[PrecisionSpec] = None,
    cache: Optional[ReferenceCache] = None,
    jobs: int = 1,
    tol: Optional[Any] = None,
) -> np.ndarray:
    """
    Sorted eigenvalues of X_n, computed by inertia bisection or taken from the cache.

    Args:
        pair: Symbol pair
        n: Matrix order
        prec: Oracle precision (default double, Config.ORACLE_TOL)
        cache: On-disk cache; None disables caching
        jobs: Worker processes
        tol: Bisection width (default from the precision)
    """
    prec = prec or PrecisionSpec.double()
    tol = default_eig_tol(pair, prec) if tol is None else tol
    if cache is not None:
        cached = cache.load(pair, n, prec, tol)
        if cached is not None:
            return cached
    values = all_eigs(pair, n, prec, tol, jobs)
    if cache is not None:
        cache.store(pair, n, prec, tol, values)
    return values
