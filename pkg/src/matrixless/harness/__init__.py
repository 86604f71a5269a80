"""
Reference spectra, error measurement and report rendering.
"""
from .diagnostics import parity_diagnostic
from .errors import compare, convergence_order, table_sweep
from .figures import FIGURE_HEADER, TABLE_COLUMNS, figure_dump, format_table_csv, format_table_text
from .reference import ReferenceCache, reference_spectrum

__all__ = [
    'ReferenceCache',
    'reference_spectrum',
    'compare',
    'convergence_order',
    'table_sweep',
    'parity_diagnostic',
    'figure_dump',
    'format_table_csv',
    'format_table_text',
    'FIGURE_HEADER',
    'TABLE_COLUMNS',
]
