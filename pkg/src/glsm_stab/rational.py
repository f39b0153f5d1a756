"""Exact rational helpers and the canonical "p/q" text encoding."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, str, Fraction]


def to_fraction(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction or a "p/q" / "p" string into a Fraction.

    Decimal strings and floats are rejected so that no inexact value can
    enter the library.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"decimal notation is not accepted: {value!r}")
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(value: RationalLike) -> str:
    """Canonical encoding: always "p/q" with q > 0 and gcd(p, q) = 1."""
    q = to_fraction(value)
    return f"{q.numerator}/{q.denominator}"


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out

