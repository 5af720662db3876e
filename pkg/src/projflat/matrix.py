"""Sparse exact matrices over the rationals or the rational quaternions.

Entries are stored in a dict keyed by ``(row, col)``; zero entries are never
stored.  Real matrices hold :class:`~fractions.Fraction` entries, quaternionic
ones hold :class:`~projflat.quaternion.Quaternion` entries.  Real scalars
(``int``/``Fraction``) may multiply either kind.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .quaternion import Quaternion, re_part

R = "R"
H = "H"
FIELDS = (R, H)


def _coerce(field: str, x):
    if field == H:
        return x if isinstance(x, Quaternion) else Quaternion(x)
    if isinstance(x, Quaternion):
        raise TypeError("quaternion entry in a real matrix")
    return Fraction(x)


class Matrix:
    """An immutable rows x cols matrix over R or H, stored sparsely."""

    __slots__ = ("field", "rows", "cols", "entries", "_by_row")

    def __init__(self, field: str, shape: tuple[int, int], entries: Mapping[tuple[int, int], object] = ()):
        if field not in FIELDS:
            raise ValueError(f"unknown field {field!r}")
        rows, cols = shape
        clean = {}
        for (i, j), x in dict(entries).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            if x:
                clean[(i, j)] = _coerce(field, x)
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = clean
        self._by_row = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, field, rows, cols, entries):
        m = cls.__new__(cls)
        m.field, m.rows, m.cols, m.entries, m._by_row = field, rows, cols, entries, None
        return m

    @classmethod
    def zero(cls, field: str, n: int, cols: int | None = None) -> "Matrix":
        return cls._raw(field, n, n if cols is None else cols, {})

    @classmethod
    def identity(cls, field: str, n: int) -> "Matrix":
        one = Quaternion(1) if field == H else Fraction(1)
        return cls._raw(field, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def unit(cls, field: str, n: int, i: int, j: int, value=1) -> "Matrix":
        """``value * E_ij`` (0-based indices)."""
        return cls(field, (n, n), {(i, j): value})

    @classmethod
    def diag(cls, field: str, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(field, (n, n), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, field: str, rows: Sequence[Sequence]) -> "Matrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                ent[(i, j)] = x
        return cls(field, (nr, nc), ent)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def zero_entry(self):
        return Quaternion(0) if self.field == H else Fraction(0)

    def __getitem__(self, ij):
        return self.entries.get(ij, self.zero_entry())

    def by_row(self) -> dict[int, dict[int, object]]:
        if self._by_row is None:
            br: dict[int, dict[int, object]] = defaultdict(dict)
            for (i, j), x in self.entries.items():
                br[i][j] = x
            self._by_row = dict(br)
        return self._by_row

    def grid(self) -> list[list]:
        z = self.zero_entry()
        g = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            g[i][j] = x
        return g

    def column(self, j: int) -> list:
        z = self.zero_entry()
        return [self.entries.get((i, j), z) for i in range(self.rows)]

    def row(self, i: int) -> list:
        z = self.zero_entry()
        return [self.entries.get((i, j), z) for j in range(self.cols)]

    # -- arithmetic ----------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(type(other))
        if self.field != other.field or self.shape != other.shape:
            raise ValueError("shape/field mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        out = dict(self.entries)
        for ij, x in other.entries.items():
            y = out.get(ij)
            s = x if y is None else y + x
            if s:
                out[ij] = s
            else:
                out.pop(ij, None)
        return Matrix._raw(self.field, self.rows, self.cols, out)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, self.rows, self.cols, {ij: -x for ij, x in self.entries.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        """Left multiplication by a scalar (real, or quaternion for H)."""
        if not c:
            return Matrix._raw(self.field, self.rows, self.cols, {})
        out = {}
        for ij, x in self.entries.items():
            y = c * x
            if y:
                out[ij] = y
        return Matrix._raw(self.field, self.rows, self.cols, out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.cols != other.rows:
            raise ValueError("shape/field mismatch")
        rows_b = other.by_row()
        acc: dict[tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            rb = rows_b.get(k)
            if not rb:
                continue
            for j, b in rb.items():
                key = (i, j)
                p = a * b
                y = acc.get(key)
                acc[key] = p if y is None else y + p
        return Matrix._raw(self.field, self.rows, other.cols, {ij: x for ij, x in acc.items() if x})

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product with a dense vector."""
        z = self.zero_entry()
        out = [z] * self.rows
        for (i, j), a in self.entries.items():
            if v[j]:
                out[i] = out[i] + a * v[j]
        return out

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, self.cols, self.rows, {(j, i): x for (i, j), x in self.entries.items()})

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        s = self.zero_entry()
        for i in range(self.rows):
            x = self.entries.get((i, i))
            if x is not None:
                s = s + x
        return s

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.field, self.shape, frozenset(self.entries.items())))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.shape}, {self.entries!r})"


def re_trace(m: Matrix) -> Fraction:
    """Sum of the real parts of the diagonal (the ordinary trace over R)."""
    if m.rows != m.cols:
        raise ValueError("re_trace of a non-square matrix")
    return sum((re_part(m.entries[(i, i)]) for i in range(m.rows) if (i, i) in m.entries), Fraction(0))


def matrix_from_columns(field: str, columns: Iterable[Sequence]) -> Matrix:
    cols = list(columns)
    nrows = len(cols[0]) if cols else 0
    ent = {}
    for j, c in enumerate(cols):
        for i, x in enumerate(c):
            ent[(i, j)] = x
    return Matrix(field, (nrows, len(cols)), ent)


# -- dense rational linear algebra (small helpers) ----------------------------

def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def det_rational(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                row_c = a[c]
                a[i] = [x - f * y for x, y in zip(a[i], row_c)]
    return det


def inverse_rational(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]
