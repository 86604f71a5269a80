"""
Pytest configuration and fixtures for matrixless tests.
"""
import sys
from pathlib import Path

# Add src to path for imports
project_root = Path(__file__).parent.parent
src_path = project_root / "src"
sys.path.insert(0, str(src_path))

import pytest
from matrixless.spectra import PrecisionSpec
from matrixless.symbols import certify, example_pair


@pytest.fixture(scope="session")
def example1():
    """Certified Example 1 pair; l/g simplifies to 1 - cos(t)."""
    return certify(example_pair(1), samples=2000)


@pytest.fixture(scope="session")
def example2():
    """Certified Example 2 pair."""
    return certify(example_pair(2), samples=2000)


@pytest.fixture(scope="session")
def example3():
    """Certified Example 3 pair: g vanishes at 0, f = 2 - cos(t)."""
    return certify(example_pair(3), samples=2000)


@pytest.fixture
def double():
    """Double precision spec."""
    return PrecisionSpec.double()


@pytest.fixture
def extended():
    """40-digit precision spec."""
    return PrecisionSpec.extended(40)


@pytest.fixture
def cache_dir(tmp_path):
    """Empty directory for reference spectra."""
    path = tmp_path / "cache"
    path.mkdir()
    return path
