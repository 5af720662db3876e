"""Matrix representations attached to a projectively flat connection.

For a Ricci-symmetric connection the image of a basis element X is the
(m+1) x (m+1) block matrix ``[[nabla_X, X], [-gamma(X, .), 0]]``.  The
traceless form subtracts ``tr(f(X)) / (m+1)`` times the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .connection import Connection, gamma_form, ricci
from .errors import NotGeneric, RicciNotSymmetric
from .lie import Subalgebra
from .matrix import R, Matrix, inverse_rational, rank
from .poly import DEFAULT_SYMBOLIC_CAP, MultiPoly, poly_det
from .rational import to_str

SYMMETRIC = "ricci-symmetric"
TRACELESS = "traceless"


@dataclass(frozen=True, eq=False)
class Representation:
    carrier: Subalgebra
    images: tuple[Matrix, ...]
    form: str

    @property
    def dim(self) -> int:
        """Dimension m of the carrier; matrices are (m+1) x (m+1)."""
        return self.carrier.dim

    def __getitem__(self, a: int) -> Matrix:
        return self.images[a]

    def to_json(self) -> dict[str, list[list[str]]]:
        return {name: [[to_str(x) for x in row] for row in img.grid()]
                for name, img in zip(self.carrier.names, self.images)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _symmetric_images(conn: Connection, gam) -> tuple[Matrix, ...]:
    m = conn.dim
    out = []
    for a in range(m):
        ent = dict(conn.matrix_of(a))
        ent[(a, m)] = Fraction(1)
        for b in range(m):
            if gam[a][b]:
                ent[(m, b)] = -gam[a][b]
        out.append(Matrix(R, (m + 1, m + 1), ent))
    return tuple(out)


def build_rep_symmetric(conn: Connection) -> Representation:
    """``[[nabla_X, X], [-gamma(X, .), 0]]`` per basis element."""
    gam = gamma_form(ricci(conn))
    if gam is None:
        raise RicciNotSymmetric(f"Ricci tensor of {conn.label or 'connection'} is not symmetric")
    return Representation(conn.carrier, _symmetric_images(conn, gam), SYMMETRIC)


def traceless_projection(rep: Representation) -> Representation:
    m = rep.dim
    ident = Matrix.identity(R, m + 1)
    imgs = tuple(f - ident.scale(f.trace() / (m + 1)) for f in rep.images)
    return Representation(rep.carrier, imgs, TRACELESS)


def build_rep_traceless(conn: Connection) -> Representation:
    """The symmetric form shifted by a scalar so every image is traceless."""
    return traceless_projection(build_rep_symmetric(conn))


def trace_shift(rep: Representation, s: Sequence) -> Representation:
    """Add ``s[a]`` times the identity to the image of each basis element."""
    ident = Matrix.identity(R, rep.dim + 1)
    return Representation(rep.carrier, tuple(f + ident.scale(Fraction(c)) for f, c in zip(rep.images, s)), rep.form)


def homomorphism_defects(rep: Representation) -> list[tuple[int, int]]:
    """Pairs a < b where [f(X_a), f(X_b)] differs from f([X_a, X_b])."""
    st = rep.carrier.structure
    m = rep.dim
    zero = Matrix.zero(R, m + 1)
    bad = []
    for a in range(m):
        for b in range(a + 1, m):
            target = zero
            for c, x in st.get((a, b), {}).items():
                target = target + rep.images[c].scale(x)
            if rep.images[a].commutator(rep.images[b]) != target:
                bad.append((a, b))
    return bad


def verify_homomorphism(rep: Representation) -> bool:
    return not homomorphism_defects(rep)


def p_condition_alphas(rep: Representation) -> list[Fraction] | None:
    """The scalars alpha_a with f(X_a) e_{m+1} = e_a + alpha_a e_{m+1}, or None."""
    m = rep.dim
    alphas = []
    for a, f in enumerate(rep.images):
        col = f.column(m)
        if col[a] != 1 or any(col[i] for i in range(m) if i != a):
            return None
        alphas.append(col[m])
    return alphas


def _columns(rep: Representation, v: Sequence):
    """Columns f(X_1)v, ..., f(X_m)v, v (generic entries: anything ring-like)."""
    cols = [f.apply(v) if not isinstance(v[0], MultiPoly) else _apply_poly(f, v) for f in rep.images]
    cols.append(list(v))
    return cols


def _apply_poly(f: Matrix, v: Sequence[MultiPoly]) -> list[MultiPoly]:
    nv = v[0].nvars
    out = [MultiPoly.zero(nv) for _ in range(f.rows)]
    for (i, j), a in f.entries.items():
        out[i] = out[i] + v[j] * a
    return out


def invariant_poly(rep: Representation, cap: int = DEFAULT_SYMBOLIC_CAP,
                   strategy: str = "minor-expansion") -> MultiPoly:
    """phi_f(v) = det(f(X_1)v, ..., f(X_m)v, v) in variables x_1, ..., x_{m+1}.

    Memoized minor expansion is the default: these matrices are sparse with
    linear entries, where it beats fraction-free elimination by a wide margin.
    """
    n = rep.dim + 1
    xs = [MultiPoly.var(i, n) for i in range(n)]
    cols = _columns(rep, xs)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return poly_det(rows, strategy=strategy, cap=cap)


def _conj_matrices(xi: Sequence, m: int) -> tuple[Matrix, Matrix]:
    xi = [Fraction(x) for x in xi]
    if len(xi) != m:
        raise ValueError(f"covector has length {len(xi)}, expected {m}")
    base = {(i, i): 1 for i in range(m + 1)}
    q = Matrix(R, (m + 1, m + 1), {**base, **{(m, j): -x for j, x in enumerate(xi)}})
    qinv = Matrix(R, (m + 1, m + 1), {**base, **{(m, j): x for j, x in enumerate(xi)}})
    return q, qinv


def conjugate_rep(rep: Representation, xi: Sequence) -> Representation:
    """Q^{-1} f Q with Q = [[I, 0], [-xi, 1]]."""
    q, qinv = _conj_matrices(xi, rep.dim)
    return Representation(rep.carrier, tuple(qinv @ f @ q for f in rep.images), rep.form)


def g1_component(rep: Representation) -> list[list[Fraction]]:
    """Row a holds the first m entries of the bottom row of f(X_a)."""
    m = rep.dim
    return [f.row(m)[:m] for f in rep.images]


def generic_matrix(rep: Representation, v: Sequence) -> list[list[Fraction]]:
    """The matrix whose columns are f(X_1)v, ..., f(X_m)v, v."""
    v = [Fraction(x) for x in v]
    if len(v) != rep.dim + 1:
        raise ValueError("v must have length m+1")
    cols = _columns(rep, v)
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def pv_genericity(rep: Representation, v: Sequence) -> bool:
    return rank(generic_matrix(rep, v)) == rep.dim + 1


def n_homomorphism(rep: Representation, v: Sequence) -> Representation:
    """P^{-1} fbar P for P = (fbar(X_1)v, ..., fbar(X_m)v, v), fbar traceless."""
    bar = rep if rep.form == TRACELESS else traceless_projection(rep)
    p = generic_matrix(bar, v)
    try:
        pinv = inverse_rational(p)
    except ZeroDivisionError:
        raise NotGeneric("v is not a generic point for this representation") from None
    P = Matrix.from_rows(R, p)
    Pinv = Matrix.from_rows(R, pinv)
    return Representation(rep.carrier, tuple(Pinv @ f @ P for f in bar.images), TRACELESS)
