"""Decide whether a projective class contains a flat affine connection.

Conjugating the symmetric representation by ``Q = [[I, 0], [-xi, 1]]`` moves
the g1 block to ``xi(nabla_X Y) - xi(X) xi(Y) - gamma(X, Y)``.  A covector
``xi`` killing that block for every basis pair gives the flat representative
``projective_change(conn, xi)``.  The solver below looks for such a ``xi`` by
exact propagation and either returns it or a replayable refutation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .connection import (Connection, canonical_connection, gamma_form, induced_connection, is_autoparallel,
                         is_flat, projective_change, ricci, torsion_defect)
from .errors import RicciNotSymmetric
from .lie import BasisElement, LieAlgebraModel, Subalgebra
from .matrix import H, det_rational, rref
from .parabolic import SimpleRootSubset, dynkin_render, parabolic, solvable_part
from .poly import DEFAULT_SYMBOLIC_CAP, MultiPoly
from .rational import sqrt_exact, to_str
from .rep import Representation, build_rep_symmetric, generic_matrix, invariant_poly, verify_homomorphism

FLAT = "flat"
NOT_FLAT = "not_flat"
UNKNOWN = "unknown"
PARABOLIC = "parabolic"
SOLVABLE = "solvable"
DEFAULT_BRANCH_DEPTH = 8
DEFAULT_ORACLE_TRIALS = 24
DEFAULT_ORACLE_CAP = 12  # exact cross-check inside decide; the invariant itself allows more

_QUAT_OFFDIAG = {"1": "alpha", "i": "beta", "j": "gamma", "k": "eta"}


def unknown_name(b: BasisElement, field_: str) -> str:
    """Name of the coordinate of xi dual to ``b``."""
    if b.kind == "H":
        return f"xi_{b.i}"
    if b.kind == "Im":
        return f"{_QUAT_OFFDIAG[b.unit]}_{b.i}{b.i}"
    if field_ == H:
        return f"{_QUAT_OFFDIAG[b.unit]}_{b.i}{b.j}"
    return f"zeta_{b.i}{b.j}"


# -- the quadratic system -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadraticSystem:
    """Equations xi(nabla_a X_b) - xi_a xi_b - gamma(a, b) = 0 over ordered pairs.

    ``derived`` holds the reduced row echelon form of the linear constraints
    xi([X_a, X_b]) = 0 that follow from antisymmetrizing the pair equations.
    """

    carrier: Subalgebra
    names: tuple[str, ...]
    linear: dict  # (a, b) -> sparse covector L_ab with L_ab . xi = xi(nabla_a X_b)
    gamma: tuple[tuple[Fraction, ...], ...]
    derived: tuple[tuple[str, MultiPoly], ...]

    @property
    def m(self) -> int:
        return len(self.names)

    def equation(self, a: int, b: int) -> MultiPoly:
        m = self.m
        terms: dict = {}
        for c, x in self.linear.get((a, b), {}).items():
            e = [0] * m
            e[c] = 1
            terms[tuple(e)] = x
        e = [0] * m
        e[a] += 1
        e[b] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) - 1
        if self.gamma[a][b]:
            terms[(0,) * m] = -self.gamma[a][b]
        return MultiPoly(m, terms)

    def pair_label(self, a: int, b: int) -> str:
        cn = self.carrier.names
        return f"({cn[a]},{cn[b]})"

    def equations(self) -> Iterator[tuple[str, MultiPoly]]:
        """All m^2 pair equations followed by the derived linear constraints."""
        for a in range(self.m):
            for b in range(self.m):
                yield self.pair_label(a, b), self.equation(a, b)
        yield from self.derived

    def residuals(self, xi: Sequence) -> dict[str, Fraction]:
        """Nonzero values of the pair equations at ``xi``."""
        xi = [Fraction(x) for x in xi]
        out = {}
        for a in range(self.m):
            for b in range(self.m):
                v = sum((x * xi[c] for c, x in self.linear.get((a, b), {}).items()), Fraction(0))
                v -= xi[a] * xi[b] + self.gamma[a][b]
                if v:
                    out[self.pair_label(a, b)] = v
        return out


def derived_constraints(carrier: Subalgebra) -> list[list[Fraction]]:
    """RREF rows spanning the coordinates of [carrier, carrier]."""
    m = carrier.dim
    seen = set()
    rows = []
    for v in carrier.structure.values():
        key = tuple(sorted(v.items()))
        if key in seen or tuple((c, -x) for c, x in key) in seen:
            continue
        seen.add(key)
        row = [Fraction(0)] * m
        for c, x in v.items():
            row[c] = Fraction(x)
        rows.append(row)
    return rref(rows)[0]


def build_condition_system(conn: Connection) -> QuadraticSystem:
    gam = gamma_form(ricci(conn))
    if gam is None:
        raise RicciNotSymmetric("the condition system needs a symmetric Ricci tensor")
    car = conn.carrier
    names = tuple(unknown_name(b, car.model.field) for b in car.basis)
    linear = {k: dict(v) for k, v in conn.coeffs.items()}
    derived = tuple((f"[s,s]#{k + 1}", MultiPoly.linear(row)) for k, row in enumerate(derived_constraints(car)))
    return QuadraticSystem(car, names, linear, tuple(tuple(r) for r in gam), derived)


# -- verdicts and certificates ---------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One derivation step; ``rule`` is zero, solve, square, eliminate, branch or contradiction."""

    rule: str
    label: str
    var: int | None = None
    value: MultiPoly | Fraction | None = None
    factors: tuple = ()
    text: str = ""


@dataclass
class CertNode:
    steps: list[Step] = field(default_factory=list)
    children: list["CertNode"] = field(default_factory=list)
    outcome: str = ""  # contradiction | flat | unknown

    def lines(self, indent: str = "") -> list[str]:
        out = [indent + s.text for s in self.steps]
        for k, ch in enumerate(self.children):
            br = self.steps[-1].factors[k]
            out.append(f"{indent}case {k + 1}: {br[1]}")
            out.extend(ch.lines(indent + "  "))
        return out


@dataclass(frozen=True, eq=False)
class FlatnessVerdict:
    kind: str
    witness: tuple[Fraction, ...] | None = None
    certificate: tuple[str, ...] = ()
    reason: str = ""
    tree: CertNode | None = None
    flat_connection: Connection | None = None

    @property
    def is_flat(self) -> bool:
        return self.kind == FLAT


def _names_str(p: MultiPoly, names) -> str:
    return p.to_str(names)


class _State:
    """Pending equations with a variable occurrence index."""

    def __init__(self, m: int, eqs: dict, occ: dict, env: list):
        self.m = m
        self.eqs = eqs  # label -> MultiPoly, insertion ordered
        self.occ = occ  # var -> set of labels
        self.env = env  # ordered list of (var, MultiPoly value)

    @classmethod
    def start(cls, system: QuadraticSystem) -> "_State":
        st = cls(system.m, {}, {}, [])
        for label, p in system.equations():
            st.add(label, p)
        return st

    def copy(self) -> "_State":
        return _State(self.m, dict(self.eqs), {v: set(s) for v, s in self.occ.items()}, list(self.env))

    def add(self, label: str, p: MultiPoly, front: bool = False):
        if not p:
            return
        if front:
            self.eqs = {label: p, **self.eqs}
        else:
            self.eqs[label] = p
        for v in p.variables():
            self.occ.setdefault(v, set()).add(label)

    def assign(self, var: int, value: MultiPoly):
        self.env.append((var, value))
        for label in self.occ.pop(var, ()):
            p = self.eqs.get(label)
            if p is None:
                continue
            q = p.substitute(var, value)
            old = p.variables() - {var}
            new = q.variables()
            for v in old - new:
                s = self.occ.get(v)
                if s:
                    s.discard(label)
            for v in new - old:
                self.occ.setdefault(v, set()).add(label)
            if q:
                self.eqs[label] = q
            else:
                del self.eqs[label]

    def witness(self) -> list[Fraction]:
        """Back-substitute the environment with every free unknown set to 0."""
        vals: dict[int, Fraction] = {}
        zero = [Fraction(0)] * self.m
        for var, value in reversed(self.env):
            point = [vals.get(i, Fraction(0)) for i in range(self.m)]
            vals[var] = value.evaluate(point) if value.nvars else Fraction(0)
        return [vals.get(i, zero[i]) for i in range(self.m)]


def _single_var(p: MultiPoly) -> int | None:
    vs = p.variables()
    return next(iter(vs)) if len(vs) == 1 else None


def _univariate(p: MultiPoly, u: int) -> dict[int, Fraction]:
    return {e[u]: Fraction(c) for e, c in p.terms.items()}


def _quadratic_roots(coeffs: dict[int, Fraction]) -> tuple[str, list[Fraction]]:
    """Classify c2 u^2 + c1 u + c0: ('none' | 'irrational' | 'rational', roots)."""
    c2, c1, c0 = (coeffs.get(k, Fraction(0)) for k in (2, 1, 0))
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return "none", []
    r = sqrt_exact(disc)
    if r is None:
        return "irrational", []
    roots = sorted({(-c1 - r) / (2 * c2), (-c1 + r) / (2 * c2)})
    return "rational", roots


def _split_product(p: MultiPoly) -> tuple[MultiPoly, MultiPoly] | None:
    """Write a degree-2 polynomial as a product of two degree-1 factors, if visible.

    For each variable u of degree one, p = A u + C; when A is nonconstant and
    divides C exactly, p = A (u + C / A).
    """
    if p.degree() != 2:
        return None
    for u in sorted(p.variables()):
        if p.degree_in(u) != 1:
            continue
        parts = p.collect(u)
        A = parts.get(1)
        C = parts.get(0, MultiPoly.zero(p.nvars))
        if A is None or A.degree() != 1:
            continue
        if not C:
            return A, MultiPoly.var(u, p.nvars)
        q, r = C.divmod(A)
        if not r and q.degree() <= 1:
            return A, MultiPoly.var(u, p.nvars) + q
    return None


def _linear_solution(p: MultiPoly, u: int) -> MultiPoly:
    """Solve the degree-1 polynomial p = 0 for x_u."""
    parts = p.collect(u)
    c = Fraction(next(iter(parts[1].terms.values())))
    return parts.get(0, MultiPoly.zero(p.nvars)) * (-1 / c)


class Solver:
    def __init__(self, system: QuadraticSystem, conn: Connection | None = None,
                 depth: int = DEFAULT_BRANCH_DEPTH, reverse: bool = False):
        self.system = system
        self.conn = conn
        self.depth = depth
        self.reverse = reverse
        self.names = system.names
        self.originals = dict(system.equations())

    # -- pretty printing ----------------------------------------------------
    def fmt(self, p: MultiPoly) -> str:
        return _names_str(p, self.names)

    def _sharpen(self, label: str, state: _State) -> str | None:
        """Rephrase a contradiction at a diagonal pair as a square equal to a negative number."""
        orig = self.originals.get(label)
        if orig is None:
            return None
        for u in sorted(orig.variables()):
            if orig.degree_in(u) != 2:
                continue
            p = orig
            for var, value in state.env:
                if var != u:
                    p = p.substitute(var, value)
            if p.variables() != {u}:
                continue
            cf = _univariate(p, u)
            if set(cf) - {0, 2}:
                continue
            rhs = -cf.get(0, Fraction(0)) / cf[2]
            if rhs < 0:
                return f"{self.names[u]}^2 = {to_str(rhs)}"
        return None

    # -- propagation ---------------------------------------------------------
    def _scan(self, state: _State):
        """Pick the highest-priority rule applicable to the pending equations."""
        p2 = p3 = p4 = p5 = None
        contradictions = []
        for label, p in state.eqs.items():
            d = p.degree()
            if d == 0:
                contradictions.append(label)
                continue
            u = _single_var(p)
            if d == 1:
                if u is not None:
                    if p2 is None:
                        p2 = (label, u)
                elif p4 is None:
                    p4 = label
            elif d == 2 and u is not None:
                if p3 is None:
                    p3 = (label, u)
            elif d == 2 and p5 is None:
                p5 = label
        if contradictions:
            for label in contradictions:
                s = self._sharpen(label, state)
                if s:
                    return "contradiction", (label, s)
            return "contradiction", (contradictions[0], None)
        if p2:
            return "solve", p2
        if p3:
            return "square", p3
        if p4:
            return "eliminate", p4
        if p5:
            return "product", p5
        return None, None

    def run(self) -> FlatnessVerdict:
        state = _State.start(self.system)
        root = CertNode()
        for label, p in self.system.derived:
            u = _single_var(p)
            if u is not None and p.degree() == 1:
                val = _linear_solution(p, u)
                if not val:
                    root.steps.append(Step("zero", label, u, val, text=f"{label}: xi vanishes on [s,s], so {self.names[u]} = 0"))
                    state.assign(u, val)
        kind, payload = self._explore(state, root, 0)
        lines = tuple(root.lines())
        if kind == FLAT:
            xi = tuple(payload)
            flat = projective_change(self.conn, xi) if self.conn is not None else None
            return FlatnessVerdict(FLAT, witness=xi, certificate=lines, tree=root, flat_connection=flat)
        if kind == NOT_FLAT:
            return FlatnessVerdict(NOT_FLAT, certificate=lines, tree=root)
        return FlatnessVerdict(UNKNOWN, certificate=lines, reason=payload, tree=root)

    def _explore(self, state: _State, node: CertNode, depth: int):
        while True:
            rule, arg = self._scan(state)
            if rule == "contradiction":
                label, sharp = arg
                p = state.eqs[label]
                c = to_str(Fraction(p.terms[(0,) * state.m]))
                text = f"contradiction: {label} reduces to {c} = 0"
                if sharp:
                    text += f", i.e. {sharp}"
                node.steps.append(Step("contradiction", label, text=text))
                node.outcome = "contradiction"
                return NOT_FLAT, None
            if rule == "solve":
                label, u = arg
                p = state.eqs[label]
                val = _linear_solution(p, u)
                node.steps.append(Step("solve", label, u, val, text=f"{label}: {self.fmt(p)} = 0 => {self.names[u]} = {self.fmt(val)}"))
                state.assign(u, val)
                continue
            if rule == "square":
                label, u = arg
                p = state.eqs[label]
                status, roots = _quadratic_roots(_univariate(p, u))
                if status == "none":
                    node.steps.append(Step("contradiction", label, u,
                                           text=f"contradiction: {label}: {self.fmt(p)} = 0 has no real root"))
                    node.outcome = "contradiction"
                    return NOT_FLAT, None
                if status == "irrational":
                    node.steps.append(Step("unknown", label, u, text=f"{label}: {self.fmt(p)} = 0 has irrational roots"))
                    node.outcome = "unknown"
                    return UNKNOWN, f"irrational root in {label}"
                if len(roots) == 1:
                    val = MultiPoly.constant(roots[0], state.m)
                    node.steps.append(Step("square", label, u, val, text=f"{label}: {self.fmt(p)} = 0 => {self.names[u]} = {to_str(roots[0])}"))
                    state.assign(u, val)
                    continue
                x = MultiPoly.var(u, state.m)
                factors = [x - MultiPoly.constant(r, state.m) for r in roots]
                return self._branch(state, node, depth, label, p, factors)
            if rule == "eliminate":
                label = arg
                p = state.eqs[label]
                u = min(p.variables())
                val = _linear_solution(p, u)
                node.steps.append(Step("eliminate", label, u, val, text=f"{label}: {self.fmt(p)} = 0 => {self.names[u]} = {self.fmt(val)}"))
                state.assign(u, val)
                continue
            if rule == "product":
                label = arg
                p = state.eqs[label]
                split = _split_product(p)
                if split is not None:
                    return self._branch(state, node, depth, label, p, list(split))
                node.steps.append(Step("unknown", label, text=f"{label}: {self.fmt(p)} = 0 does not split"))
                node.outcome = "unknown"
                return UNKNOWN, f"unsplit quadratic in {label}"
            # every equation is satisfied
            xi = state.witness()
            if self.conn is None or verify_witness(self.conn, xi, self.system):
                node.steps.append(Step("satisfied", "", text="all equations hold; free unknowns set to 0: witness " + "(" + ", ".join(map(to_str, xi)) + ")"))
                node.outcome = "flat"
                return FLAT, xi
            node.steps.append(Step("unknown", "", text="zero-filled free unknowns fail verification"))
            node.outcome = "unknown"
            return UNKNOWN, "zero-filled witness failed verification"

    def _branch(self, state, node, depth, label, p, factors):
        if depth >= self.depth:
            node.steps.append(Step("unknown", label, text=f"{label}: branch depth {self.depth} reached"))
            node.outcome = "unknown"
            return UNKNOWN, "branch depth limit reached"
        if self.reverse:
            factors = factors[::-1]
        cases = tuple((f, f"{self.fmt(f)} = 0") for f in factors)
        node.steps.append(Step("branch", label, factors=cases,
                               text=f"{label}: {self.fmt(p)} = 0 splits into " + " or ".join(c[1] for c in cases)))
        reason = None
        for k, (f, _) in enumerate(cases):
            child = CertNode()
            node.children.append(child)
            sub = state.copy()
            sub.add(f"case {k + 1}", f, front=True)
            kind, payload = self._explore(sub, child, depth + 1)
            if kind == FLAT:
                node.outcome = "flat"
                return FLAT, payload
            if kind == UNKNOWN:
                reason = reason or payload
        if reason is not None:
            node.outcome = "unknown"
            return UNKNOWN, reason
        node.outcome = "contradiction"
        return NOT_FLAT, None


def solve(system: QuadraticSystem, conn: Connection | None = None, depth: int = DEFAULT_BRANCH_DEPTH,
          reverse: bool = False) -> FlatnessVerdict:
    """Constraint propagation with rational branching; see :class:`Solver`."""
    return Solver(system, conn, depth, reverse).run()


def replay(system: QuadraticSystem, tree: CertNode) -> bool:
    """Re-check every recorded step of a refutation against the system."""
    state = _State.start(system)
    return _replay_node(system, state, tree)


def _replay_node(system: QuadraticSystem, state: _State, node: CertNode) -> bool:
    for step in node.steps:
        p = state.eqs.get(step.label)
        if step.rule in ("zero", "solve", "square", "eliminate"):
            if p is None or step.var not in p.variables() or p.substitute(step.var, step.value):
                return False
            if step.rule == "square":
                roots = _quadratic_roots(_univariate(p, step.var))
                if roots != ("rational", [step.value.evaluate([0] * state.m)]):
                    return False
            elif p.degree() != 1:
                return False
            state.assign(step.var, step.value)
        elif step.rule == "contradiction":
            if p is None:
                return False
            if p.degree() == 0:
                return True
            u = _single_var(p)
            return u is not None and p.degree() == 2 and _quadratic_roots(_univariate(p, u))[0] == "none"
        elif step.rule == "branch":
            if p is None or len(node.children) != len(step.factors):
                return False
            prod = MultiPoly.constant(1, state.m)
            for f, _ in step.factors:
                prod = prod * f
            if p * prod.leading()[1] != prod * p.leading()[1]:
                return False
            for k, ((f, _), child) in enumerate(zip(step.factors, node.children)):
                sub = state.copy()
                sub.add(f"case {k + 1}", f, front=True)
                if not _replay_node(system, sub, child):
                    return False
            return True
        else:
            return False
    return False


# -- witnesses -----------------------------------------------------------------

def verify_witness(conn: Connection, xi: Sequence, system: QuadraticSystem | None = None) -> bool:
    """All pair equations vanish at xi and the projective change is flat and torsion free."""
    if system is None:
        system = build_condition_system(conn)
    if system.residuals(xi):
        return False
    changed = projective_change(conn, xi)
    return not torsion_defect(changed) and is_flat(changed)


def _threshold_index(n: int, subset: SimpleRootSubset) -> int:
    idx = subset.indices
    if not idx or idx[-1] != n - 1:
        return n + 1
    il = idx[-1]
    for k in range(len(idx) - 1, 0, -1):
        if idx[k] - idx[k - 1] <= 2:
            il = idx[k - 1]
        else:
            break
    return il


def candidate_witnesses(structure: str, n: int, subset: SimpleRootSubset, carrier: Subalgebra) -> list[tuple[Fraction, ...]]:
    """Recipe covectors on the carrier basis, followed by the zero covector."""
    m = carrier.dim
    h_pos = {b.i: a for a, b in enumerate(carrier.basis) if b.kind == "H"}
    out = []
    if structure == SOLVABLE:
        xi = [Fraction(0)] * m
        for i in subset.complement:
            xi[h_pos[i]] = Fraction(-i, n)
        out.append(tuple(xi))
    elif structure == PARABOLIC:
        il = _threshold_index(n, subset)
        xi = [Fraction(0)] * m
        for r, a in h_pos.items():
            xi[a] = Fraction(-r, n) if r <= il - 2 else Fraction(n - r, n)
        out.append(tuple(xi))
    else:
        raise ValueError(f"unknown structure {structure!r}")
    zero = (Fraction(0),) * m
    if zero not in out:
        out.append(zero)
    return out


# -- invariant polynomial cross-check -----------------------------------------

@dataclass(frozen=True)
class OracleResult:
    mode: str  # exact | probabilistic
    passed: bool


def hyperplane_oracle(rep: Representation, xi: Sequence, trials: int = DEFAULT_ORACLE_TRIALS,
                      cap: int = DEFAULT_SYMBOLIC_CAP, seed: int = 0, phi: MultiPoly | None = None) -> OracleResult:
    """Does phi_f vanish on the hyperplane x_{m+1} = -xi . x ?

    Exact when m+1 <= cap (``phi`` may be passed in to avoid recomputing it),
    otherwise the determinant is sampled at seeded random rational points.
    """
    m = rep.dim
    xi = [Fraction(x) for x in xi]
    if m + 1 <= cap:
        if phi is None:
            phi = invariant_poly(rep, cap=cap)
        hyper = MultiPoly.linear([-x for x in xi] + [Fraction(0)])
        return OracleResult("exact", not phi.substitute(m, hyper))
    rng = random.Random(seed)
    for _ in range(trials):
        x = [Fraction(rng.randint(-60, 60), rng.randint(1, 7)) for _ in range(m)]
        z = -sum((a * b for a, b in zip(xi, x)), Fraction(0))
        if det_rational(generic_matrix(rep, x + [z])):
            return OracleResult("probabilistic", False)
    return OracleResult("probabilistic", True)


# -- orchestration ---------------------------------------------------------------

@dataclass(frozen=True)
class DecideOptions:
    branch_depth: int = DEFAULT_BRANCH_DEPTH
    oracle_cap: int = DEFAULT_ORACLE_CAP
    oracle_trials: int = DEFAULT_ORACLE_TRIALS
    reverse: bool = False
    oracle: bool = True
    try_candidates: bool = True


@dataclass(eq=False)
class Decision:
    model: LieAlgebraModel
    subset: SimpleRootSubset
    structure: str
    carrier: Subalgebra
    connection: Connection
    system: QuadraticSystem
    verdict: FlatnessVerdict
    autoparallel: bool
    homomorphism: bool
    oracle_mode: str
    oracle_agrees: bool | None
    via: str  # candidate | solver

    def to_json(self) -> dict:
        v = self.verdict
        out = {
            "field": self.model.field,
            "n": self.model.n,
            "subset": str(self.subset),
            "structure": self.structure,
            "dim": self.carrier.dim,
            "diagram": dynkin_render(self.model.n, self.subset),
            "verdict": v.kind,
            "checks": {
                "autoparallel": self.autoparallel,
                "homomorphism": self.homomorphism,
                "oracle": self.oracle_mode,
            },
        }
        if self.oracle_agrees is not None:
            out["checks"]["oracle_agrees"] = self.oracle_agrees
        if v.witness is not None:
            out["witness"] = [to_str(x) for x in v.witness]
        if v.certificate:
            out["certificate"] = list(v.certificate)
        if v.reason:
            out["reason"] = v.reason
        return out


_CANONICAL: dict[int, Connection] = {}


def canonical_for(model: LieAlgebraModel) -> Connection:
    key = id(model)
    if key not in _CANONICAL:
        _CANONICAL[key] = canonical_connection(model)
    return _CANONICAL[key]


def structure_carrier(model: LieAlgebraModel, subset: SimpleRootSubset, structure: str) -> Subalgebra:
    if structure == PARABOLIC:
        return parabolic(model, subset)
    if structure == SOLVABLE:
        return solvable_part(model, subset)
    raise ValueError(f"unknown structure {structure!r}")


def decide(model: LieAlgebraModel, subset: SimpleRootSubset, structure: str,
           options: DecideOptions = DecideOptions()) -> Decision:
    carrier = structure_carrier(model, subset, structure)
    canon = canonical_for(model)
    auto = is_autoparallel(canon, carrier)
    conn = induced_connection(canon, carrier)
    system = build_condition_system(conn)
    rep = build_rep_symmetric(conn)
    hom = verify_homomorphism(rep)
    verdict = None
    via = "solver"
    candidates = candidate_witnesses(structure, model.n, subset, carrier)
    if options.try_candidates:
        for xi in candidates:
            if verify_witness(conn, xi, system):
                verdict = FlatnessVerdict(FLAT, witness=tuple(xi), certificate=("recipe witness verified exactly",),
                                          flat_connection=projective_change(conn, xi))
                via = "candidate"
                break
    if verdict is None:
        verdict = solve(system, conn, depth=options.branch_depth, reverse=options.reverse)
    mode, agrees = "skipped", None
    if options.oracle:
        cap = options.oracle_cap
        phi = invariant_poly(rep, cap=cap) if carrier.dim + 1 <= cap else None
        if verdict.kind == FLAT:
            res = hyperplane_oracle(rep, verdict.witness, options.oracle_trials, cap, phi=phi)
            mode, agrees = res.mode, res.passed
        elif verdict.kind == NOT_FLAT and phi is not None:
            # no recipe hyperplane may pass for a refuted class
            results = [hyperplane_oracle(rep, xi, options.oracle_trials, cap, phi=phi) for xi in candidates]
            mode, agrees = "exact", not any(r.passed for r in results)
    return Decision(model, subset, structure, carrier, conn, system, verdict, auto, hom, mode, agrees, via)
