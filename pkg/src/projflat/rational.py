"""String serialization of exact rationals.

Scalars are plain :class:`fractions.Fraction` values throughout the package;
this module only fixes the wire format ("-3/16", integers as "5").
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]


def to_str(q: RationalLike) -> str:
    return str(Fraction(q))


def from_str(s: str) -> Fraction:
    s = s.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational string")
    return Fraction(s)


def vec_to_str(v: Iterable[RationalLike]) -> list[str]:
    return [to_str(x) for x in v]


def is_rational_square(q: Fraction) -> bool:
    return q >= 0 and sqrt_exact(q) is not None


def sqrt_exact(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
