"""Internal utility functions and numeric conventions."""

import math
from typing import Union

#: tolerance on the additivity of belief masses
EPS_ADD = 1e-9

#: uncertainty below which an opinion is considered dogmatic
EPS_DOGMATIC = 1e-12

#: slack granted to operator preconditions
EPS_PRE = 1e-9

#: non-informative prior weight of the binary frame
PRIOR_WEIGHT = 2

#: digits used to render numbers in text and JSON outputs
SIGNIFICANT_DIGITS = 12

#: largest supported frame of discernment
MAX_ATOMS = 64

Number = Union[int, float]


def median3(x: float, y: float, z: float) -> float:
    """Return the median of three values."""
    return max(min(x, y), min(max(x, y), z))


def unit_clamp(x: float) -> float:
    """Clamp *x* into the unit interval."""
    return min(max(x, 0.0), 1.0)


def in_unit_interval(x: float, tol: float = 0.0) -> bool:
    """Return True if *x* is in [0, 1] within the *tol* tolerance."""
    return -tol <= x <= 1.0 + tol


def ratio(num: float, den: float) -> float:
    """Non-negative ratio with the conventions x/0 = +inf (also 0/0)."""
    if den == 0:
        return math.inf
    return num / den


def format_number(x: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Render *x* with at most *digits* significant digits.

    Trailing zeros are trimmed and values smaller than ``1e-12`` in
    magnitude (rounding noise around zero) are rendered as ``0``.

    >>> format_number(6.999999999999999)
    '7'
    >>> format_number(1 / 3)
    '0.333333333333'
    """
    if abs(x) < 1e-12:
        return "0"
    return f"{x:.{digits}g}"


def json_number(x: float, digits: int = SIGNIFICANT_DIGITS) -> Number:
    """Round *x* for JSON serialization; integral values become int."""
    value = float(format_number(x, digits))
    if value.is_integer() and abs(value) < 2**53:
        return int(value)
    return value
