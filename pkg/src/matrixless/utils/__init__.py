"""
Utility modules for matrixless.
"""
from .files import read_json, write_json_atomic, write_text_atomic
from .validators import fraction_to_text, parse_coefficients, parse_int_list, to_fraction

__all__ = [
    'read_json',
    'write_json_atomic',
    'write_text_atomic',
    'fraction_to_text',
    'parse_coefficients',
    'parse_int_list',
    'to_fraction',
]
