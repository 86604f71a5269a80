"""
Pydantic schemas for run configuration.
"""

from .run_config import RunConfig

__all__ = [
    'RunConfig',
]
