"""Scalar handling.

The default scalar is an exact rational (``fractions.Fraction``), which keeps
every operation in the library bit-exact.  A floating-point mode exists for
oracle cross-checks and large fuzz runs; it is selected per object at
construction time and detected from the numpy dtype (``object`` = exact,
``float64`` = float).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

import numpy as np

from .errors import ParseError

FLOAT_ZERO_TOL = 1e-9

_SCALAR_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_scalar(text: str, exact: bool = True):
    """Parse an integer or ``p/q`` literal. Float mode also accepts decimals."""
    text = text.strip()
    if exact:
        if not _SCALAR_RE.match(text):
            raise ParseError(f"not an integer or p/q rational: {text!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator: {text!r}") from None
    try:
        return float(Fraction(text)) if _SCALAR_RE.match(text) else float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}") from None


def format_scalar(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def scalar_array(values, shape, exact: bool = True) -> np.ndarray:
    """Build an immutable tensor of scalars in the requested mode."""
    flat = list(values)
    size = int(np.prod(shape)) if shape else 1
    if len(flat) != size:
        raise ValueError(f"expected {size} values, got {len(flat)}")
    if exact:
        arr = np.empty(size, dtype=object)
        arr[:] = [v if isinstance(v, Fraction) else Fraction(v) for v in flat]
    else:
        arr = np.asarray([float(v) for v in flat], dtype=np.float64)
    arr = arr.reshape(shape)
    arr.flags.writeable = False
    return arr


def zeros_array(shape, exact: bool = True) -> np.ndarray:
    return scalar_array([Fraction(0)] * int(np.prod(shape)), shape, exact)


def freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def array_is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def is_zero(value, exact: bool = True) -> bool:
    if exact:
        return value == 0
    return abs(value) <= FLOAT_ZERO_TOL


def arrays_equal(a: np.ndarray, b: np.ndarray, exact: bool = True) -> bool:
    if a.shape != b.shape:
        return False
    if exact:
        return bool(np.all(a == b))
    return bool(np.all(np.abs(a - b) <= FLOAT_ZERO_TOL))


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
