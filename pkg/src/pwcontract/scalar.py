"""Scalars in the two arithmetic modes.

Exact mode uses :class:`fractions.Fraction`.  Float mode uses 113-bit
``gmpy2.mpfr`` values (quad-precision significand).  The Python type of a
scalar is its mode tag; :func:`mode_of` rejects anything else and
:func:`check_mode` rejects mixing.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import ModeMismatch, ValidationError

FLOAT_PRECISION = 113

# Default endpoint tolerance for float-mode branch decisions.
EPS_CMP = mpfr(2) ** -40

_NEAREST = gmpy2.context(precision=FLOAT_PRECISION)
DOWN = gmpy2.context(precision=FLOAT_PRECISION, round=gmpy2.RoundDown)
UP = gmpy2.context(precision=FLOAT_PRECISION, round=gmpy2.RoundUp)


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def parse_scalar(value) -> Fraction:
    """Parse ``"p/q"``, a decimal literal, an int or a Fraction exactly.

    Decimal strings are read as the decimal fraction they spell, so
    ``"0.1"`` is ``1/10`` and not the nearest binary float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse scalar {value!r}") from exc
    if isinstance(value, type(mpfr(0))):
        return Fraction(*value.as_integer_ratio())
    raise ValidationError(f"cannot parse scalar of type {type(value).__name__}")


def mode_of(x) -> Mode:
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return Mode.EXACT
    if isinstance(x, type(mpfr(0))):
        return Mode.FLOAT
    raise ModeMismatch(f"unsupported scalar type {type(x).__name__}")


def check_mode(x, mode: Mode):
    """Return ``x`` (ints promoted to Fraction) if it belongs to ``mode``."""
    got = mode_of(x)
    if got is not mode:
        raise ModeMismatch(f"{got.value} scalar used with a {mode.value}-mode map")
    if isinstance(x, int):
        return Fraction(x)
    return x


def to_float(q) -> mpfr:
    """Round an exact rational to the nearest float-mode scalar."""
    if isinstance(q, type(mpfr(0))):
        return q
    q = parse_scalar(q)
    with gmpy2.context(_NEAREST):
        return mpfr(mpq(q.numerator, q.denominator))


def to_mode(value, mode: Mode):
    q = parse_scalar(value) if not isinstance(value, type(mpfr(0))) else value
    if mode is Mode.EXACT:
        return parse_scalar(q)
    return to_float(q)


def enclose(q) -> tuple[mpfr, mpfr]:
    """Outward-rounded float enclosure ``lo <= q <= hi`` of an exact rational."""
    q = mpq(q.numerator, q.denominator)
    with gmpy2.context(DOWN):
        lo = mpfr(q)
    with gmpy2.context(UP):
        hi = mpfr(q)
    return lo, hi


def fmt(x, decimal: bool = False) -> str:
    """Render a scalar as ``num/den`` (or 15 significant digits)."""
    if isinstance(x, int):
        x = Fraction(x)
    if decimal or not isinstance(x, Fraction):
        return format(float(x) if isinstance(x, Fraction) else x, ".15g")
    return f"{x.numerator}/{x.denominator}"
