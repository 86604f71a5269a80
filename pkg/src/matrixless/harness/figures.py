"""
Text renderings of error reports: per-index figure data and error tables.

All output uses LF line endings and a plain decimal point.
"""
from __future__ import annotations

import csv
import io
import math

import numpy as np

from ..models import ErrorReport, SweepResult

FIGURE_COLUMNS = ("j", "theta", "log10_err")
FIGURE_HEADER = ",".join(FIGURE_COLUMNS)
TABLE_COLUMNS = ("n", "k", "max_err", "normalized_err", "oracle_digits")


def _log10_text(value: float) -> str:
    if value == 0.0:
        return "-inf"
    return repr(math.log10(value))


def _csv_text(header: tuple[str, ...], rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def figure_dump(report: ErrorReport) -> str:
    """
    Per-index base-10 logarithm of the errors of one report.

    One header line, then ``j,theta,log10_err`` rows for j = 1..n with
    theta = j pi / (n+1). Zero errors are written as ``-inf``.
    """
    errors = np.asarray(report.errors, dtype=np.float64)
    rows = (
        (j, repr(j * math.pi / (report.n + 1)), _log10_text(float(err)))
        for j, err in enumerate(errors, start=1)
    )
    return _csv_text(FIGURE_COLUMNS, rows)


def _cell(value: float, spec: str) -> str:
    if math.isnan(value):
        return "-"
    return format(value, spec)


def format_table_csv(sweep: SweepResult) -> str:
    """Machine-readable table, one row per (n, k) cell, level-major."""
    rows = (
        (r.n, r.k, repr(float(r.max_error)), repr(float(r.normalized)), r.oracle_digits)
        for r in sweep.cells()
    )
    return _csv_text(TABLE_COLUMNS, rows)


def format_table_text(sweep: SweepResult) -> str:
    """
    Aligned plain-text table with the empirical convergence order column.

    The order on row (n, k) is measured between n and the next larger swept
    order. Parity anomalies are listed under the table.
    """
    header = ("n", "k", "max_err", "normalized_err", "oracle_digits", "conv_order")
    rows = []
    for report in sweep.cells():
        order = sweep.convergence.get((report.n, report.k), math.nan)
        rows.append((
            str(report.n),
            str(report.k),
            _cell(report.max_error, ".4e"),
            _cell(report.normalized, ".5f"),
            str(report.oracle_digits),
            _cell(order, ".3f"),
        ))

    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))

    for diag in sweep.anomalies:
        lines.append(
            f"parity anomaly at n={diag.n}, k={diag.k}: "
            f"even max {diag.even_max:.4e}, odd max {diag.odd_max:.4e}, ratio {diag.ratio:.1f}"
        )
    return "\n".join(lines) + "\n"
