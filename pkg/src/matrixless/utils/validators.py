"""
Input validation utilities.
"""
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Union

from ..exceptions import InvalidSymbolError

CoefficientLike = Union[str, int, float, Decimal, Fraction]

_RATIONAL = re.compile(r"^[+-]?\d+\s*/\s*\d+$")


def to_fraction(value: CoefficientLike) -> Fraction:
    """
    Convert a coefficient given as text or number into an exact rational.

    Floats go through their shortest repr so that 0.1 means 1/10.

    Args:
        value: Coefficient value

    Returns:
        Exact rational value

    Examples:
        >>> to_fraction("17.5")
        Fraction(35, 2)
        >>> to_fraction("1/3")
        Fraction(1, 3)
    """
    if isinstance(value, bool):
        raise InvalidSymbolError(f"Invalid coefficient: {value!r}")
    try:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(repr(value))
        if isinstance(value, Decimal):
            if not value.is_finite():
                raise InvalidSymbolError(f"Coefficient must be finite: {value}")
            return Fraction(value)
        text = str(value).strip()
        if _RATIONAL.match(text):
            num, den = (part.strip() for part in text.split("/"))
            return Fraction(int(num), int(den))
        return Fraction(Decimal(text))
    except (InvalidOperation, ValueError, ZeroDivisionError, OverflowError) as e:
        raise InvalidSymbolError(f"Invalid coefficient {value!r}: {e}") from e


def parse_coefficients(text: Union[str, Iterable[CoefficientLike]]) -> list[Fraction]:
    """
    Parse a cosine coefficient list.

    Accepts "[2, -1, -1]", "2,-1,-1", "2 -1 -1" or an iterable of numbers.

    Args:
        text: Coefficient list

    Returns:
        List of exact rationals c_0..c_m

    Examples:
        >>> parse_coefficients("[2, -1, -1]")
        [Fraction(2, 1), Fraction(-1, 1), Fraction(-1, 1)]
    """
    if isinstance(text, str):
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        items = [item for item in re.split(r"[,\s]+", body) if item]
    else:
        items = list(text)

    if not items:
        raise InvalidSymbolError("Coefficient list is empty")

    return [to_fraction(item) for item in items]


def parse_int_list(text: Union[str, Iterable[int]]) -> list[int]:
    """
    Parse a list of integers such as "256,512,1024" or "[1, 2, 3]".

    Args:
        text: Integer list

    Returns:
        List of integers
    """
    if isinstance(text, str):
        body = text.strip().strip("[]")
        items = [item for item in re.split(r"[,\s]+", body) if item]
    else:
        items = list(text)
    try:
        return [int(item) for item in items]
    except (TypeError, ValueError) as e:
        raise ValueError(f"Invalid integer list {text!r}: {e}") from e


def fraction_to_text(value: Fraction) -> str:
    """
    Render a rational as plain decimal text when it terminates, else as "p/q".

    Examples:
        >>> fraction_to_text(Fraction(35, 2))
        '17.5'
        >>> fraction_to_text(Fraction(1, 3))
        '1/3'
    """
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    for prime in (2, 5):
        while den % prime == 0:
            den //= prime
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    text = format(Decimal(value.numerator) / Decimal(value.denominator), "f")
    return text.rstrip("0").rstrip(".") if "." in text else text
