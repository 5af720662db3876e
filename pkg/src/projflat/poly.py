"""Sparse multivariate polynomials over Q and determinants of polynomial matrices.

A :class:`MultiPoly` maps exponent tuples (one slot per variable) to nonzero
rational coefficients.  Coefficients may be ``int`` or ``Fraction``; the two
mix freely and compare equal when they should.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from operator import add, sub
from typing import Iterable, Mapping, Sequence

from .errors import SizeCapExceeded

MINUS_INFINITY = float("-inf")
DEFAULT_SYMBOLIC_CAP = 16

Exp = tuple


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def grlex_key(e: Exp):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] = ()):
        self.nvars = nvars
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if c:
                clean[e] = _norm(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars, p.terms = nvars, terms
        return p

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {(0,) * nvars: _norm(c)} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "MultiPoly":
        """sum_i coeffs[i] * x_i + const."""
        nv = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * nv
                e[i] = 1
                terms[tuple(e)] = _norm(c)
        if const:
            terms[(0,) * nv] = _norm(const)
        return cls._raw(nv, terms)

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree; ``MINUS_INFINITY`` for the zero polynomial."""
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int):
        if not self.terms:
            return MINUS_INFINITY
        return max(e[i] for e in self.terms)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def coeff(self, e: Exp):
        return self.terms.get(tuple(e), 0)

    def leading(self):
        """(exponent, coefficient) of the grlex-largest term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # -- arithmetic -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.nvars, {})
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def exquo(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact quotient; raises ArithmeticError if ``divisor`` does not divide."""
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division by a single polynomial in grlex order.

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        divisor = self._lift(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = divisor.leading()
        rest = [(e, c) for e, c in divisor.terms.items() if e != lead_e]
        rem = dict(self.terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quot: dict = {}
        remainder: dict = {}
        while heap:
            nd, ne = heapq.heappop(heap)
            e = tuple(-x for x in ne)
            c = rem.pop(e, 0)
            if not c:
                continue
            # skip duplicate heap entries for the same monomial
            while heap and heap[0] == (nd, ne):
                heapq.heappop(heap)
            shift = tuple(map(sub, e, lead_e))
            if min(shift) < 0:
                remainder[e] = c
                continue
            if isinstance(c, int) and isinstance(lead_c, int) and c % lead_c == 0:
                qc = c // lead_c
            else:
                qc = _norm(Fraction(c) / lead_c)
            quot[shift] = qc
            for de, dc in rest:
                t = tuple(map(add, de, shift))
                v = rem.get(t, 0) - qc * dc
                if v:
                    if t not in rem:
                        heapq.heappush(heap, (-sum(t), tuple(-x for x in t)))
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return MultiPoly._raw(self.nvars, quot), MultiPoly._raw(self.nvars, remainder)

    # -- evaluation / substitution -------------------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    t *= Fraction(x) ** k
            total += t
        return total

    def collect(self, i: int) -> dict[int, "MultiPoly"]:
        """Coefficients in x_i: {k: p_k} with self = sum_k p_k x_i^k."""
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(k, {})[e2] = c
        return {k: MultiPoly._raw(self.nvars, t) for k, t in parts.items()}

    def substitute(self, i: int, value: "MultiPoly") -> "MultiPoly":
        """Replace x_i by the polynomial ``value`` (Horner in x_i)."""
        value = self._lift(value)
        parts = self.collect(i)
        if not parts:
            return MultiPoly.zero(self.nvars)
        d = max(parts)
        res = parts.get(d, MultiPoly.zero(self.nvars))
        for k in range(d - 1, -1, -1):
            res = res * value
            if k in parts:
                res = res + parts[k]
        return res

    # -- serialization ----------------------------------------------------------
    def to_serial(self) -> list[tuple[list[int], str]]:
        """Terms as (exponents, "p/q") sorted in decreasing graded-lex order."""
        return [(list(e), str(Fraction(self.terms[e]))) for e in sorted(self.terms, key=grlex_key, reverse=True)]

    @classmethod
    def from_serial(cls, nvars: int, items: Iterable) -> "MultiPoly":
        return cls(nvars, {tuple(e): Fraction(c) for e, c in items})

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        out = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = Fraction(self.terms[e])
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


# -- determinants ---------------------------------------------------------------

def _check_grid(m: Sequence[Sequence[MultiPoly]], cap: int | None) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if cap is not None and n > cap:
        raise SizeCapExceeded(f"{n}x{n} determinant exceeds the symbolic cap {cap}")
    if n:
        nv = m[0][0].nvars
        if any(x.nvars != nv for row in m for x in row):
            raise ValueError("entries disagree on variable count")
    return n


def _clear_denominators(m):
    """Scale each row to integer coefficients. Returns (rows, total_scale)."""
    scale = 1
    out = []
    for row in m:
        den = 1
        for x in row:
            for c in x.terms.values():
                if isinstance(c, Fraction):
                    den = den * c.denominator // math.gcd(den, c.denominator)
        if den != 1:
            row = [x * den for x in row]
            row = [MultiPoly._raw(x.nvars, {e: _norm(c) for e, c in x.terms.items()}) for x in row]
        scale *= den
        out.append(list(row))
    return out, scale


def det_bareiss(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    nv = m[0][0].nvars
    a, scale = _clear_denominators(m)
    sign = 1
    prev = MultiPoly.constant(1, nv)
    for k in range(n - 1):
        cands = [i for i in range(k, n) if a[i][k]]
        if not cands:
            return MultiPoly.zero(nv)
        p = min(cands, key=lambda i: (len(a[i][k].terms), i))
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        trivial_prev = prev.terms == {(0,) * nv: 1}
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                t = piv * row_i[j]
                if aik:
                    t = t - aik * row_k[j]
                row_i[j] = t if trivial_prev else t.exquo(prev)
            row_i[k] = MultiPoly.zero(nv)
        prev = piv
    det = a[n - 1][n - 1]
    if sign < 0:
        det = -det
    if scale != 1:
        det = det * Fraction(1, scale)
    return det


def det_minors(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Laplace expansion memoized over column subsets (2^n table)."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    nv = m[0][0].nvars
    level = {0: MultiPoly.constant(1, nv)}
    for r in range(n):
        row = m[r]
        nxt: dict[int, MultiPoly] = {}
        for mask, sub_det in level.items():
            if not sub_det:
                continue
            # column c appended after the columns already in mask; sign counts
            # how many chosen columns lie to the right of c
            for c in range(n):
                bit = 1 << c
                if mask & bit or not row[c]:
                    continue
                right = bin(mask >> (c + 1)).count("1")
                term = row[c] * sub_det
                if right & 1:
                    term = -term
                key = mask | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        level = nxt
    return level.get((1 << n) - 1, MultiPoly.zero(nv))


def poly_det(m: Sequence[Sequence[MultiPoly]], strategy: str = "bareiss",
             cap: int | None = DEFAULT_SYMBOLIC_CAP) -> MultiPoly:
    """Exact determinant of a square grid of polynomials."""
    _check_grid(m, cap)
    if strategy == "bareiss":
        return det_bareiss(m)
    if strategy in ("minor-expansion", "minors"):
        return det_minors(m)
    raise ValueError(f"unknown determinant strategy {strategy!r}")


def linear_factor_divides(p: MultiPoly, ell: MultiPoly) -> tuple[bool, MultiPoly | None]:
    """Decide whether the degree-1 polynomial ``ell`` divides ``p``.

    ``ell = 0`` is solved for its highest-index variable, the solution is
    substituted into ``p``, and only on identical vanishing is the exact
    quotient computed.
    """
    if ell.degree() != 1:
        raise ValueError("ell must have total degree exactly 1")
    nv = ell.nvars
    v = max(i for e in ell.terms for i, x in enumerate(e) if x)
    ev = tuple(int(i == v) for i in range(nv))
    c = Fraction(ell.terms[ev])
    rest = MultiPoly._raw(nv, {e: x for e, x in ell.terms.items() if e != ev})
    hyper = rest * (-1 / c)
    if p.substitute(v, hyper):
        return False, None
    return True, p.exquo(ell)
