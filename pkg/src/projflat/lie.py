"""Matrix models of sl(n, R) and sl(n, H) with their canonical ordered basis.

The diagonal part uses the dual basis H^i of the simple roots
alpha_i = lambda_i - lambda_{i+1}; off-diagonal elements are u*E_ij for a
quaternion unit u; for H the imaginary diagonal elements u*E_tt are included.
Indices in the public API are 1-based, as in the usual matrix notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import NotInAlgebra
from .matrix import H, R, Matrix, re_trace
from .quaternion import Quaternion, re_part

UNITS_R = ("1",)
UNITS_H = ("1", "i", "j", "k")
IM_UNITS = ("i", "j", "k")

SparseVec = dict  # {basis index: Fraction}, zero entries absent


@dataclass(frozen=True)
class BasisElement:
    kind: str  # "H", "Im" or "E"
    i: int
    j: int = 0
    unit: str = "1"

    @property
    def name(self) -> str:
        if self.kind == "H":
            return f"H{self.i}"
        prefix = "" if self.unit == "1" else self.unit
        if self.kind == "Im":
            return f"{prefix}E{self.i}{self.i}"
        return f"{prefix}E{self.i}{self.j}"

    @property
    def root(self) -> tuple[int, int] | None:
        """(i, j) for the root lambda_i - lambda_j; None on the centralizer."""
        return (self.i, self.j) if self.kind == "E" else None

    def __str__(self):
        return self.name


def Hb(i: int) -> BasisElement:
    return BasisElement("H", i)


def Eb(i: int, j: int, unit: str = "1") -> BasisElement:
    return BasisElement("E", i, j, unit)


def ImDiag(t: int, unit: str) -> BasisElement:
    return BasisElement("Im", t, t, unit)


def dual_basis_H(n: int, i: int, field: str = R) -> Matrix:
    """H^i = (1/n) diag(n-i, ..., n-i, -i, ..., -i) with i leading entries."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"H^{i} undefined for n={n}")
    vals = [Fraction(n - i, n)] * i + [Fraction(-i, n)] * (n - i)
    return Matrix.diag(field, vals)


def simple_root_value(k: int, d: Matrix) -> Fraction:
    """alpha_k(D) = Re D_kk - Re D_{k+1,k+1} (1-based k)."""
    return re_part(d[(k - 1, k - 1)]) - re_part(d[(k, k)])


def canonical_basis(field: str, n: int) -> tuple[BasisElement, ...]:
    basis = [Hb(i) for i in range(1, n)]
    if field == H:
        basis += [ImDiag(t, u) for t in range(1, n + 1) for u in IM_UNITS]
    units = UNITS_H if field == H else UNITS_R
    basis += [Eb(i, j, u) for i in range(1, n + 1) for j in range(1, n + 1) if i != j for u in units]
    return tuple(basis)


def element_matrix(field: str, n: int, b: BasisElement) -> Matrix:
    if b.kind == "H":
        return dual_basis_H(n, b.i, field)
    value = Quaternion.unit(b.unit) if field == H else 1
    return Matrix.unit(field, n, b.i - 1, b.j - 1, value)


class LieAlgebraModel:
    """sl(n, K) with cached basis matrices and structure constants.

    ``structure[(a, b)]`` is the sparse coordinate vector of [X_a, X_b]; pairs
    with zero bracket are absent.
    """

    def __init__(self, field: str, n: int):
        if field not in (R, H):
            raise ValueError(f"field must be 'R' or 'H', got {field!r}")
        if n < 2:
            raise ValueError("n must be at least 2")
        self.field = field
        self.n = n
        self.basis = canonical_basis(field, n)
        self.dim = len(self.basis)
        self.index = {b: a for a, b in enumerate(self.basis)}
        self.by_name = {b.name: a for a, b in enumerate(self.basis)}
        self.matrices = tuple(element_matrix(field, n, b) for b in self.basis)
        self._e_index = {(b.i, b.j, b.unit): a for a, b in enumerate(self.basis) if b.kind != "H"}
        self.structure = self._structure_constants()

    def __repr__(self):
        return f"LieAlgebraModel({self.field!r}, {self.n})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.basis)

    def root_of(self, a: int) -> tuple[int, int] | None:
        return self.basis[a].root

    def idx(self, b: BasisElement | str) -> int:
        if isinstance(b, str):
            return self.by_name[b]
        return self.index[b]

    # -- coordinates ------------------------------------------------------------
    def coords_sparse(self, m: Matrix) -> SparseVec:
        """Coordinates of ``m`` in the basis; NotInAlgebra if it is not in sl(n, K)."""
        n = self.n
        if m.shape != (n, n) or m.field != self.field:
            raise NotInAlgebra("shape or field mismatch")
        if re_trace(m):
            raise NotInAlgebra("matrix has nonzero (real) trace")
        out: SparseVec = {}
        for k in range(1, n):
            c = simple_root_value(k, m)
            if c:
                out[k - 1] = c
        for (i, j), x in m.entries.items():
            if i == j:
                if self.field == H:
                    for u, c in zip(IM_UNITS, (x.i, x.j, x.k)):
                        if c:
                            out[self._e_index[(i + 1, i + 1, u)]] = c
                continue
            if self.field == H:
                for u, c in zip(UNITS_H, x.components()):
                    if c:
                        out[self._e_index[(i + 1, j + 1, u)]] = c
            else:
                out[self._e_index[(i + 1, j + 1, "1")]] = x
        if self.realize(out) != m:
            raise NotInAlgebra("nonzero residual after basis expansion")
        return out

    def realize(self, vec: Mapping[int, Fraction] | Sequence[Fraction]) -> Matrix:
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        acc = Matrix.zero(self.field, self.n)
        for a, c in items:
            if c:
                acc = acc + self.matrices[a].scale(Fraction(c))
        return acc

    def dense(self, vec: Mapping[int, Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for a, c in vec.items():
            out[a] = Fraction(c)
        return tuple(out)

    def _structure_constants(self) -> dict[tuple[int, int], SparseVec]:
        st = {}
        mats = self.matrices
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                br = mats[a].commutator(mats[b])
                if br.is_zero():
                    continue
                v = self.coords_sparse(br)
                st[(a, b)] = v
                st[(b, a)] = {c: -x for c, x in v.items()}
        return st

    @cached_property
    def full(self) -> "Subalgebra":
        return Subalgebra(self, tuple(range(self.dim)))

    def subalgebra(self, elements: Iterable[int | str | BasisElement], check: bool = True) -> "Subalgebra":
        idx = sorted({e if isinstance(e, int) else self.idx(e) for e in elements})
        sub = Subalgebra(self, tuple(idx))
        if check and not sub.is_closed():
            raise ValueError("span is not closed under the bracket")
        return sub


@lru_cache(maxsize=None)
def build_algebra(field: str, n: int) -> LieAlgebraModel:
    """Cached canonical model of sl(n, field); field is 'R' or 'H'."""
    return LieAlgebraModel(field, n)


def bracket(model: LieAlgebraModel, a, b) -> tuple[Fraction, ...]:
    """Dense coordinates of [X_a, X_b]."""
    ia, ib = model.idx(a) if not isinstance(a, int) else a, model.idx(b) if not isinstance(b, int) else b
    return model.dense(model.structure.get((ia, ib), {}))


def coordinates(model: LieAlgebraModel, m: Matrix) -> tuple[Fraction, ...]:
    return model.dense(model.coords_sparse(m))


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """A span of parent basis elements, kept in parent canonical order.

    Local index ``a`` refers to parent basis element ``indices[a]``.
    """

    model: LieAlgebraModel
    indices: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("subalgebra indices must be strictly increasing")

    def __eq__(self, other):
        return isinstance(other, Subalgebra) and self.model is other.model and self.indices == other.indices

    def __hash__(self):
        return hash((id(self.model), self.indices))

    @property
    def dim(self) -> int:
        return len(self.indices)

    @cached_property
    def local(self) -> dict[int, int]:
        """parent index -> local index"""
        return {p: a for a, p in enumerate(self.indices)}

    @cached_property
    def basis(self) -> tuple[BasisElement, ...]:
        return tuple(self.model.basis[p] for p in self.indices)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.basis)

    def is_closed(self) -> bool:
        loc = self.local
        st = self.model.structure
        for p in self.indices:
            for q in self.indices:
                v = st.get((p, q))
                if v and any(c not in loc for c in v):
                    return False
        return True

    @cached_property
    def structure(self) -> dict[tuple[int, int], SparseVec]:
        """Local structure constants; requires bracket closure."""
        loc = self.local
        st = self.model.structure
        out = {}
        for a, p in enumerate(self.indices):
            for b, q in enumerate(self.indices):
                v = st.get((p, q))
                if v:
                    try:
                        out[(a, b)] = {loc[c]: x for c, x in v.items()}
                    except KeyError:
                        raise ValueError(f"{self.names[a]}, {self.names[b]} bracket leaves the span") from None
        return out

    def contains(self, other: "Subalgebra") -> bool:
        return other.model is self.model and set(other.indices) <= set(self.indices)


def jacobi_defect(model_or_sub, a: int, b: int, c: int) -> SparseVec:
    """[[a,b],c] + [[b,c],a] + [[c,a],b] in local coordinates (empty when Jacobi holds)."""
    st = model_or_sub.structure
    acc: dict[int, Fraction] = {}

    def add_bracket(vec, z):
        for d, x in vec.items():
            for e, y in st.get((d, z), {}).items():
                acc[e] = acc.get(e, 0) + x * y

    add_bracket(st.get((a, b), {}), c)
    add_bracket(st.get((b, c), {}), a)
    add_bracket(st.get((c, a), {}), b)
    return {e: x for e, x in acc.items() if x}
