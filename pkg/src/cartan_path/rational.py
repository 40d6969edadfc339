"""Exact rational scalars.

All exact computations use :class:`fractions.Fraction`; this module only
adds the strict string format used at I/O boundaries (``"p/q"`` or an
integer string) and a coercion that refuses floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalFormatError(ValueError):
    """A string that is not an integer or ``p/q`` literal."""


def parse_rat(text: str) -> Fraction:
    """Parse ``"3"``, ``"-7/4"`` and the like. Decimals and floats are rejected."""
    if not isinstance(text, str):
        raise RationalFormatError(f"expected a rational string, got {type(text).__name__}: {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        raise RationalFormatError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats raise ``TypeError``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def sign(x) -> int:
    return (x > 0) - (x < 0)
