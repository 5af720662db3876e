"""Simple-root subsets, gradations, parabolic and solvable subalgebras of sl(n, K)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .connection import Connection, graded_solvable_connection
from .errors import InvalidSubset
from .lie import LieAlgebraModel, Subalgebra


@dataclass(frozen=True)
class SimpleRootSubset:
    """A proper subset Lambda' of {alpha_1, ..., alpha_{n-1}}, stored as indices."""

    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(self.indices)
        if len(set(idx)) != len(idx):
            raise InvalidSubset(f"duplicate simple roots in {idx}")
        idx = tuple(sorted(idx))
        if any(not 1 <= i <= self.n - 1 for i in idx):
            raise InvalidSubset(f"simple root indices must lie in 1..{self.n - 1}")
        if len(idx) == self.n - 1:
            raise InvalidSubset("the full set of simple roots is not a proper subset")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def parse(cls, n: int, text: str) -> "SimpleRootSubset":
        """Parse "1,3,5" or "empty"."""
        text = text.strip()
        if text.lower() in ("empty", ""):
            return cls(n, ())
        try:
            idx = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise InvalidSubset(f"cannot parse subset {text!r}") from None
        return cls(n, idx)

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n) if i not in self.indices)

    def __str__(self):
        return ",".join(map(str, self.indices)) if self.indices else "empty"


def proper_subsets(n: int) -> Iterator[SimpleRootSubset]:
    """All proper subsets in canonical order (by bitmask over alpha_1..alpha_{n-1})."""
    r = n - 1
    for mask in range((1 << r) - 1):
        yield SimpleRootSubset(n, tuple(i + 1 for i in range(r) if mask >> i & 1))


def characteristic_element(subset: SimpleRootSubset) -> tuple[int, ...]:
    """H-coordinates of Z = sum of H^i over simple roots outside the subset."""
    comp = set(subset.complement)
    return tuple(1 if i in comp else 0 for i in range(1, subset.n))


def root_level(root: tuple[int, int], Z: Sequence[int]) -> int:
    """alpha(Z) for alpha = lambda_i - lambda_j, via simple-root coordinates."""
    i, j = root
    lo, hi = min(i, j), max(i, j)
    s = sum(Z[t - 1] for t in range(lo, hi))
    return s if i < j else -s


@dataclass(frozen=True)
class GradedDecomposition:
    Z: tuple[int, ...]
    levels: dict  # level k -> tuple of basis indices (root elements only)
    centralizer: tuple[int, ...]

    def level_of(self) -> dict[int, int]:
        return {a: k for k, idx in self.levels.items() for a in idx}

    def part(self, pred) -> list[int]:
        return sorted(a for k, idx in self.levels.items() if pred(k) for a in idx)


def gradation(model: LieAlgebraModel, Z: Sequence[int]) -> GradedDecomposition:
    Z = tuple(int(z) for z in Z)
    if len(Z) != model.n - 1 or any(z < 0 for z in Z):
        raise ValueError("Z must be a nonnegative integer combination of H^1..H^{n-1}")
    levels: dict[int, list[int]] = {}
    cent = []
    for a, b in enumerate(model.basis):
        if b.root is None:
            cent.append(a)
        else:
            levels.setdefault(root_level(b.root, Z), []).append(a)
    return GradedDecomposition(Z, {k: tuple(v) for k, v in sorted(levels.items())}, tuple(cent))


def _decomp(model, subset):
    if subset.n != model.n:
        raise InvalidSubset("subset and model disagree on n")
    return gradation(model, characteristic_element(subset))


def parabolic(model: LieAlgebraModel, subset: SimpleRootSubset) -> Subalgebra:
    g = _decomp(model, subset)
    idx = set(g.centralizer) | set(g.part(lambda k: k >= 0))
    return Subalgebra(model, tuple(sorted(idx)), label=f"q[{subset}]")


def langlands(model: LieAlgebraModel, subset: SimpleRootSubset) -> tuple[Subalgebra, Subalgebra, Subalgebra]:
    """(m, a, n) pieces of the parabolic basis.

    The m piece is the coordinate complement of a in g^0; it is a subspace and
    is not claimed to be bracket-closed in this basis.
    """
    g = _decomp(model, subset)
    a_idx = tuple(model.idx(f"H{i}") for i in subset.complement)
    g0 = set(g.centralizer) | set(g.levels.get(0, ()))
    m_idx = tuple(sorted(g0 - set(a_idx)))
    n_idx = tuple(g.part(lambda k: k > 0))
    return (
        Subalgebra(model, m_idx, label=f"m[{subset}]"),
        Subalgebra(model, a_idx, label=f"a[{subset}]"),
        Subalgebra(model, n_idx, label=f"n[{subset}]"),
    )


def solvable_part(model: LieAlgebraModel, subset: SimpleRootSubset) -> Subalgebra:
    _, a, nn = langlands(model, subset)
    return Subalgebra(model, tuple(sorted(a.indices + nn.indices)), label=f"s[{subset}]")


def graded_flat_connection(model: LieAlgebraModel, subset: SimpleRootSubset) -> Connection:
    """The flat connection on s_Lambda' built from its own characteristic element."""
    g = _decomp(model, subset)
    sub = solvable_part(model, subset)
    _, a, _ = langlands(model, subset)
    lev = {p: k for p, k in g.level_of().items() if k > 0}
    conn = graded_solvable_connection(sub, a.indices, lev)
    return Connection(conn.carrier, conn.coeffs, label=f"graded flat on s[{subset}]")


def thm1_predicate(n: int, subset: SimpleRootSubset | Iterable[int]) -> bool:
    """True iff the parabolic connection is NOT projectively equivalent to a flat one."""
    idx = subset.indices if isinstance(subset, SimpleRootSubset) else tuple(sorted(subset))
    if not idx:
        return False
    return idx[0] == 1 and idx[-1] == n - 1 and all(b - a <= 2 for a, b in zip(idx, idx[1:]))


def dynkin_render(n: int, subset: SimpleRootSubset | Iterable[int]) -> str:
    idx = set(subset.indices if isinstance(subset, SimpleRootSubset) else subset)
    return "-".join("*" if i in idx else "o" for i in range(1, n))
