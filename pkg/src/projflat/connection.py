"""Left-invariant affine connections as exact coefficient tensors.

A connection on a carrier ``S`` (a :class:`~projflat.lie.Subalgebra`, possibly
the whole algebra) stores Gamma^c_{ab} with ``nabla_{X_a} X_b = sum_c
Gamma^c_{ab} X_c`` in local indices of ``S``.  Coefficients are kept sparsely:
``coeffs[(a, b)]`` is the coordinate dict of nabla_{X_a} X_b, absent when zero.

Curvature conventions:

* R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
* Ric(X, Y) = trace of Z -> R(Z, X)Y
* P = (m Ric + Ric^T) / (m^2 - 1),   gamma = Ric / (m - 1) when Ric is symmetric
* W(X, Y)Z = R(X, Y)Z + [P(X,Y) - P(Y,X)]Z - [P(Y,Z)X - P(X,Z)Y]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import CarrierMismatch, DimensionTooSmall, GradationInvalid, NotAutoparallel
from .lie import LieAlgebraModel, SparseVec, Subalgebra
from .matrix import Matrix, re_trace

Coeffs = dict  # {(a, b): SparseVec}


def _axpy(acc: dict, x: Fraction, vec: Mapping[int, Fraction]) -> None:
    for c, y in vec.items():
        acc[c] = acc.get(c, 0) + x * y


def _clean(vec: Mapping[int, Fraction]) -> SparseVec:
    return {c: x for c, x in vec.items() if x}


@dataclass(frozen=True, eq=False)
class Connection:
    carrier: Subalgebra
    coeffs: Coeffs
    label: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def names(self):
        return self.carrier.names

    def nabla(self, a: int, b: int) -> SparseVec:
        return self.coeffs.get((a, b), {})

    def nabla_vec(self, a: int, vec: Mapping[int, Fraction]) -> SparseVec:
        """nabla_{X_a} applied to a sparse vector."""
        acc: dict = {}
        for d, x in vec.items():
            v = self.coeffs.get((a, d))
            if v:
                _axpy(acc, x, v)
        return _clean(acc)

    def gamma(self, a: int, b: int, c: int) -> Fraction:
        return Fraction(self.coeffs.get((a, b), {}).get(c, 0))

    def matrix_of(self, a: int) -> dict[tuple[int, int], Fraction]:
        """Entries (row c, col b) of the linear map nabla_{X_a}."""
        out = {}
        for b in range(self.dim):
            for c, x in self.coeffs.get((a, b), {}).items():
                out[(c, b)] = x
        return out

    def trace_of(self, a: int) -> Fraction:
        return sum((Fraction(self.coeffs.get((a, b), {}).get(b, 0)) for b in range(self.dim)), Fraction(0))

    def same_as(self, other: "Connection") -> bool:
        return self.carrier == other.carrier and self.coeffs == other.coeffs


def torsion_defect(conn: Connection) -> dict[tuple[int, int], SparseVec]:
    """Pairs (a, b) where nabla_a X_b - nabla_b X_a - [X_a, X_b] is nonzero."""
    st = conn.carrier.structure
    out = {}
    for a in range(conn.dim):
        for b in range(a + 1, conn.dim):
            acc = dict(conn.nabla(a, b))
            _axpy(acc, Fraction(-1), conn.nabla(b, a))
            _axpy(acc, Fraction(-1), st.get((a, b), {}))
            acc = _clean(acc)
            if acc:
                out[(a, b)] = acc
    return out


# -- construction -------------------------------------------------------------

def canonical_connection(model: LieAlgebraModel) -> Connection:
    """nabla_X Y = XY - (Re tr XY / n) I_n on sl(n, K)."""
    n = model.n
    ident = Matrix.identity(model.field, n)
    mats = model.matrices
    coeffs = {}
    for a in range(model.dim):
        for b in range(model.dim):
            prod = mats[a] @ mats[b]
            t = re_trace(prod)
            if t:
                prod = prod - ident.scale(t / n)
            if prod.is_zero():
                continue
            coeffs[(a, b)] = model.coords_sparse(prod)
    return Connection(model.full, coeffs, label=f"canonical sl({n},{model.field})")


def _local_positions(conn: Connection, sub: Subalgebra) -> list[int]:
    car = conn.carrier
    if sub.model is not car.model:
        raise CarrierMismatch("subalgebra lives in a different model")
    try:
        return [car.local[p] for p in sub.indices]
    except KeyError:
        raise CarrierMismatch("subalgebra is not contained in the carrier") from None


def is_autoparallel(conn: Connection, sub: Subalgebra) -> bool:
    pos = _local_positions(conn, sub)
    inside = set(pos)
    for a in pos:
        for b in pos:
            if any(c not in inside for c in conn.nabla(a, b)):
                return False
    return True


def induced_connection(conn: Connection, sub: Subalgebra) -> Connection:
    pos = _local_positions(conn, sub)
    back = {p: i for i, p in enumerate(pos)}
    coeffs = {}
    for i, a in enumerate(pos):
        for j, b in enumerate(pos):
            v = conn.nabla(a, b)
            if not v:
                continue
            try:
                coeffs[(i, j)] = {back[c]: x for c, x in v.items()}
            except KeyError:
                raise NotAutoparallel(
                    f"nabla_{conn.names[a]} {conn.names[b]} leaves the subalgebra"
                ) from None
    return Connection(sub, coeffs, label=conn.label + " | induced")


def graded_solvable_connection(sub: Subalgebra, abelian: Sequence[int], levels: Mapping[int, int]) -> Connection:
    """Flat connection on a graded solvable algebra a + sum_{k>0} g^k.

    ``abelian`` and ``levels`` use parent-model indices; every basis element of
    ``sub`` must be in ``abelian`` or carry a positive level.  Table:
    (a,a) -> 0, (g^i,g^j) -> j/(i+j)[X,Y], (a,n) -> [X,Y], (n,a) -> 0.
    """
    loc = sub.local
    ab = {loc[p] for p in abelian}
    lev = {loc[p]: k for p, k in levels.items() if p in loc}
    if ab & set(lev) or len(ab) + len(lev) != sub.dim or set(ab) | set(lev) != set(range(sub.dim)):
        raise GradationInvalid("abelian part and graded part must partition the basis")
    if any(k <= 0 for k in lev.values()):
        raise GradationInvalid("graded levels must be positive")
    st = sub.structure
    for (a, b), v in st.items():
        if a in ab and b in ab:
            raise GradationInvalid("abelian part is not abelian")
        if a in ab:
            if any(lev.get(c) != lev[b] for c in v):
                raise GradationInvalid("abelian part does not preserve the gradation")
        elif b not in ab:
            if any(lev.get(c) != lev[a] + lev[b] for c in v):
                raise GradationInvalid("[g^i, g^j] not in g^(i+j)")
    coeffs = {}
    for (a, b), v in st.items():
        if a in ab:
            coeffs[(a, b)] = dict(v)
        elif b in ab:
            continue
        else:
            i, j = lev[a], lev[b]
            f = Fraction(j, i + j)
            coeffs[(a, b)] = {c: f * x for c, x in v.items()}
    return Connection(sub, coeffs, label="graded flat")


def projective_change(conn: Connection, xi: Sequence) -> Connection:
    """nabla'_X Y = nabla_X Y - xi(X) Y - xi(Y) X."""
    m = conn.dim
    if len(xi) != m:
        raise ValueError(f"covector has length {len(xi)}, expected {m}")
    xi = [Fraction(x) for x in xi]
    coeffs = {}
    for a in range(m):
        for b in range(m):
            v = dict(conn.nabla(a, b))
            if xi[a]:
                v[b] = v.get(b, 0) - xi[a]
            if xi[b]:
                v[a] = v.get(a, 0) - xi[b]
            v = _clean(v)
            if v:
                coeffs[(a, b)] = v
    return Connection(conn.carrier, coeffs, label=conn.label + " | projective change")


def connection_diff(c1: Connection, c2: Connection) -> list[tuple[int, int, SparseVec]]:
    """All (a, b, nabla1_a X_b - nabla2_a X_b) with a nonzero difference."""
    if c1.carrier != c2.carrier:
        raise CarrierMismatch("connections live on different carriers")
    out = []
    for a in range(c1.dim):
        for b in range(c1.dim):
            acc = dict(c1.nabla(a, b))
            _axpy(acc, Fraction(-1), c2.nabla(a, b))
            acc = _clean(acc)
            if acc:
                out.append((a, b, acc))
    return out


# -- curvature ------------------------------------------------------------------

def curvature_at(conn: Connection, a: int, b: int, c: int) -> SparseVec:
    acc = dict(conn.nabla_vec(a, conn.nabla(b, c)))
    _axpy(acc, Fraction(-1), conn.nabla_vec(b, conn.nabla(a, c)))
    for d, x in conn.carrier.structure.get((a, b), {}).items():
        _axpy(acc, -x, conn.nabla(d, c))
    return _clean(acc)


def curvature(conn: Connection) -> dict[tuple[int, int, int], SparseVec]:
    """Nonzero R(X_a, X_b)X_c over all basis triples (a < b; R is antisymmetric)."""
    out = {}
    m = conn.dim
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(m):
                v = curvature_at(conn, a, b, c)
                if v:
                    out[(a, b, c)] = v
    return out


def R_component(R: Mapping, a: int, b: int, c: int) -> SparseVec:
    if a == b:
        return {}
    if a < b:
        return R.get((a, b, c), {})
    return {d: -x for d, x in R.get((b, a, c), {}).items()}


def is_flat(conn: Connection) -> bool:
    m = conn.dim
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(m):
                if curvature_at(conn, a, b, c):
                    return False
    return True


def ricci_from_curvature(conn: Connection, R: Mapping | None = None) -> list[list[Fraction]]:
    """Ric(X_a, X_b) = sum_c [R(X_c, X_a) X_b]^c from the full curvature tensor."""
    if R is None:
        R = curvature(conn)
    m = conn.dim
    ric = [[Fraction(0)] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            s = Fraction(0)
            for c in range(m):
                s += R_component(R, c, a, b).get(c, 0)
            ric[a][b] = s
    return ric


def ricci(conn: Connection) -> list[list[Fraction]]:
    """Ric via traces, without materializing R.

    tr(Z -> R(Z,X)Y) = rho(nabla_X Y) - tr(nabla_X o r_Y) - tr(r_Y o ad'_X),
    where rho(W) = tr(Z -> nabla_Z W), r_Y(Z) = nabla_Z Y and ad'_X(Z) = [Z, X].
    """
    m = conn.dim
    st = conn.carrier.structure
    rho = [Fraction(0)] * m
    right: list[list[tuple[int, int, Fraction]]] = [[] for _ in range(m)]  # r_Y entries (row d, col c)
    for (c, y), v in conn.coeffs.items():
        for d, x in v.items():
            right[y].append((d, c, x))
            if d == c:
                rho[y] += x
    adr: list[list[tuple[int, int, Fraction]]] = [[] for _ in range(m)]  # ad'_X entries (row e, col c)
    for (c, x_), v in st.items():
        for e, y in v.items():
            adr[x_].append((e, c, y))
    ric = [[Fraction(0)] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            s = Fraction(0)
            for d, x in conn.nabla(a, b).items():
                s += x * rho[d]
            # tr(nabla_X o r_Y) = sum over r_Y entries (d, c) of Gamma^c_{a d} * r_Y[d, c]
            for d, c, x in right[b]:
                g = conn.coeffs.get((a, d))
                if g:
                    y = g.get(c)
                    if y:
                        s -= x * y
            # tr(r_Y o ad'_X) = sum over ad'_X entries (e, c) of r_Y[c, e] * ad'_X[e, c]
            for e, c, x in adr[a]:
                g = conn.coeffs.get((e, b))
                if g:
                    y = g.get(c)
                    if y:
                        s -= x * y
            ric[a][b] = s
    return ric


def is_symmetric(form: Sequence[Sequence[Fraction]]) -> bool:
    m = len(form)
    return all(form[a][b] == form[b][a] for a in range(m) for b in range(a + 1, m))


def p_form(ric: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    m = len(ric)
    if m < 2:
        return [[Fraction(0)] * m for _ in range(m)]
    d = m * m - 1
    return [[(m * ric[a][b] + ric[b][a]) / d for b in range(m)] for a in range(m)]


def gamma_form(ric: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Normalized Ricci tensor Ric/(m-1); None unless Ric is symmetric."""
    m = len(ric)
    if not is_symmetric(ric):
        return None
    if m < 2:
        return [[Fraction(0)] * m for _ in range(m)]
    return [[ric[a][b] / (m - 1) for b in range(m)] for a in range(m)]


@dataclass
class CurvaturePack:
    R: dict
    ric: list
    P: list
    gamma: list | None
    W: dict | None = None


def ricci_and_p(conn: Connection) -> tuple[list, list, list | None]:
    ric = ricci(conn)
    return ric, p_form(ric), gamma_form(ric)


def curvature_pack(conn: Connection, with_weyl: bool = True) -> CurvaturePack:
    R = curvature(conn)
    ric, P, gam = ricci_and_p(conn)
    W = weyl(conn, R=R, P=P) if with_weyl and conn.dim >= 3 else None
    return CurvaturePack(R=R, ric=ric, P=P, gamma=gam, W=W)


def weyl_at(conn: Connection, R: Mapping, P, a: int, b: int, c: int) -> SparseVec:
    acc = dict(R_component(R, a, b, c))
    skew = P[a][b] - P[b][a]
    if skew:
        acc[c] = acc.get(c, 0) + skew
    if P[b][c]:
        acc[a] = acc.get(a, 0) - P[b][c]
    if P[a][c]:
        acc[b] = acc.get(b, 0) + P[a][c]
    return _clean(acc)


def weyl(conn: Connection, R: Mapping | None = None, P=None) -> dict[tuple[int, int, int], SparseVec]:
    """Nonzero W(X_a, X_b)X_c for a < b."""
    if conn.dim <= 2:
        raise DimensionTooSmall("Weyl tensor needs dimension >= 3; use codazzi_flat")
    if R is None:
        R = curvature(conn)
    if P is None:
        P = p_form(ricci(conn))
    out = {}
    m = conn.dim
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(m):
                v = weyl_at(conn, R, P, a, b, c)
                if v:
                    out[(a, b, c)] = v
    return out


def codazzi_flat(conn: Connection) -> bool:
    """(nabla_X P)(Y, Z) = (nabla_Y P)(X, Z) on all basis triples (m = 2 only)."""
    if conn.dim != 2:
        raise ValueError("codazzi_flat applies to two-dimensional carriers only")
    P = p_form(ricci(conn))
    m = conn.dim

    def dP(x, y, z):
        s = Fraction(0)
        for c, v in conn.nabla(x, y).items():
            s -= v * P[c][z]
        for c, v in conn.nabla(x, z).items():
            s -= v * P[y][c]
        return s

    return all(dP(x, y, z) == dP(y, x, z) for x in range(m) for y in range(m) for z in range(m))


def is_projectively_flat(conn: Connection) -> bool:
    if conn.dim <= 1:
        return True
    if conn.dim == 2:
        return codazzi_flat(conn)
    return not weyl(conn)


def trace_identity_defects(conn: Connection, P=None) -> list[tuple[int, int]]:
    """Pairs where tr nabla_[X,Y] != (m+1)[P(X,Y) - P(Y,X)]."""
    if P is None:
        P = p_form(ricci(conn))
    m = conn.dim
    tr = [conn.trace_of(a) for a in range(m)]
    bad = []
    for (a, b), v in conn.carrier.structure.items():
        lhs = sum((x * tr[c] for c, x in v.items()), Fraction(0))
        if lhs != (m + 1) * (P[a][b] - P[b][a]):
            bad.append((a, b))
    for a in range(m):
        for b in range(m):
            if (a, b) not in conn.carrier.structure and P[a][b] != P[b][a]:
                bad.append((a, b))
    return sorted(bad)
