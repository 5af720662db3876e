"""Quaternions with exact rational components."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Quaternion:
    """re + i*b + j*c + k*d with Fraction components. Immutable."""

    __slots__ = ("re", "i", "j", "k")

    def __init__(self, re: Scalar = 0, i: Scalar = 0, j: Scalar = 0, k: Scalar = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "i", Fraction(i))
        object.__setattr__(self, "j", Fraction(j))
        object.__setattr__(self, "k", Fraction(k))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @classmethod
    def unit(cls, u: str) -> "Quaternion":
        """The quaternion unit named by ``u`` in {"1", "i", "j", "k"}."""
        return _UNITS[u]

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re, self.i, self.j, self.k)

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.re + other.re, self.i + other.i, self.j + other.j, self.k + other.k)
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.re + other, self.i, self.j, self.k)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.re, -self.i, -self.j, -self.k)

    def __sub__(self, other):
        if isinstance(other, (Quaternion, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a1, b1, c1, d1 = self.re, self.i, self.j, self.k
            a2, b2, c2, d2 = other.re, other.i, other.j, other.k
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.re * other, self.i * other, self.j * other, self.k * other)
        return NotImplemented

    def __rmul__(self, other):
        # scalars are central
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.re, -self.i, -self.j, -self.k)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.i * self.i + self.j * self.j + self.k * self.k

    def __bool__(self):
        return bool(self.re or self.i or self.j or self.k)

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return self.components() == other.components()
        if isinstance(other, (int, Fraction)):
            return self.re == other and not (self.i or self.j or self.k)
        return NotImplemented

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        return f"Quaternion({self.re}, {self.i}, {self.j}, {self.k})"

    def __str__(self):
        parts = []
        for val, u in zip(self.components(), ("", "i", "j", "k")):
            if val:
                parts.append(f"{val}{u}" if u == "" else f"{val}*{u}")
        return " + ".join(parts) if parts else "0"


_UNITS = {
    "1": Quaternion(1),
    "i": Quaternion(0, 1),
    "j": Quaternion(0, 0, 1),
    "k": Quaternion(0, 0, 0, 1),
}


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product."""
    return p * q


def re_part(x) -> Fraction:
    """Real part of a Fraction or Quaternion entry."""
    if isinstance(x, Quaternion):
        return x.re
    return Fraction(x)
