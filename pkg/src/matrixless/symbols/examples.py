"""
Built-in symbol pairs used throughout the documentation and the test-suite.
"""
from .symbol_pair import SymbolPair

# name -> (l, g, simplified f when known)
EXAMPLE_SYMBOLS: dict[int, tuple[list[str], list[str], str]] = {
    1: (["2", "-1", "-1"], ["3", "2"], "1 - cos(t)"),
    2: (["40", "-15", "-24", "-1"], ["1208", "1191", "120", "1"], "l/g"),
    3: (["17.5", "-12", "-6", "0", "0.5"], ["8", "-3", "-4", "-1"], "2 - cos(t)"),
}


def example_pair(number: int) -> SymbolPair:
    """Uncertified pair for one of the built-in examples (1, 2 or 3)."""
    try:
        l, g, _ = EXAMPLE_SYMBOLS[number]
    except KeyError:
        raise ValueError(f"Unknown example {number}; choose one of {sorted(EXAMPLE_SYMBOLS)}") from None
    return SymbolPair.from_coefficients(l, g)
