"""
Even/odd split of the individual errors.
"""
import math
from typing import Optional

import numpy as np

from ..config import Config
from ..logger import get_logger
from ..models import ErrorReport, ParityDiagnostic

logger = get_logger(__name__)


def parity_diagnostic(report: ErrorReport, threshold: Optional[float] = None) -> ParityDiagnostic:
    """
    Compare the largest error over even j with the largest over odd j.

    The ratio is max/min of the two maxima; above ``threshold``
    (Config.PARITY_THRESHOLD by default) the report is flagged.
    """
    threshold = Config.PARITY_THRESHOLD if threshold is None else threshold
    errors = np.asarray(report.errors, dtype=np.float64)
    odd = errors[0::2]   # j = 1, 3, 5, ...
    even = errors[1::2]  # j = 2, 4, 6, ...
    odd_max = float(odd.max()) if odd.size else 0.0
    even_max = float(even.max()) if even.size else 0.0

    low, high = sorted((odd_max, even_max))
    if not odd.size or not even.size or high == 0.0:
        ratio = 1.0
    elif low == 0.0:
        ratio = math.inf
    else:
        ratio = high / low

    anomaly = ratio > threshold
    if anomaly:
        logger.warning(
            "Parity anomaly at n=%d, k=%d: even max %.3e, odd max %.3e (ratio %.1f)",
            report.n, report.k, even_max, odd_max, ratio,
        )
    return ParityDiagnostic(
        n=report.n, k=report.k, even_max=even_max, odd_max=odd_max, ratio=ratio, anomaly=anomaly,
    )
