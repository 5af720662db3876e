"""Named verification suites behind ``projflat verify-suite``.

Each suite returns a list of :class:`Check` records; a suite passes when all
of its checks do.  The closed-form coefficient tables below are written out
independently of the matrix products in :mod:`projflat.connection`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .connection import (connection_diff, induced_connection, is_autoparallel, ricci_and_p,
                         torsion_defect, weyl)
from .decider import (FLAT, NOT_FLAT, PARABOLIC, SOLVABLE, build_condition_system, candidate_witnesses, canonical_for,
                      replay, solve, structure_carrier, verify_witness)
from .lie import LieAlgebraModel, build_algebra
from .matrix import re_trace
from .rational import to_str
from .parabolic import SimpleRootSubset, graded_flat_connection, proper_subsets, solvable_part, thm1_predicate
from .rep import build_rep_symmetric, verify_homomorphism


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


# -- closed-form tables for the canonical connection ---------------------------

def _h(n: int, k: int) -> dict[str, Fraction]:
    return {f"H{k}": Fraction(1)} if 1 <= k <= n - 1 else {}


def _lin(*pairs) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for c, vec in pairs:
        for k, v in vec.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def table_nabla(n: int, x: str, y: str) -> dict[str, Fraction] | None:
    """Closed-form nabla_x y for H^k and real E_ij (and iE_tt rows); None if not tabulated."""
    def parse(s):
        if s.startswith("H"):
            return ("H", int(s[1:]))
        unit = s[0] if s[0] in "ijk" else "1"
        body = s[1:] if unit != "1" else s
        return ("E", int(body[1]), int(body[2]), unit)

    a, b = parse(x), parse(y)
    if a[0] == "H" and b[0] == "H":
        k, l = sorted((a[1], b[1]))
        return _lin((Fraction(n - l, n), _h(n, k)), (Fraction(-k, n), _h(n, l)))
    if a[0] == "H" and b[3] == "1":
        k, (i, j) = a[1], b[1:3]
        return {y: Fraction(n - k, n) if i <= k else Fraction(-k, n)}
    if b[0] == "H" and a[3] == "1":
        k, (i, j) = b[1], a[1:3]
        return {x: Fraction(n - k, n) if j <= k else Fraction(-k, n)}
    if a[0] == "E" and b[0] == "E" and a[3] == b[3] == "1":
        (i, j), (k, l) = a[1:3], b[1:3]
        if i == l and j == k:
            return _lin((1, _h(n, i)), (-1, _h(n, i - 1)))
        return {f"E{i}{l}": Fraction(1)} if j == k else {}
    if a[0] == "E" and a[3] == "i" and a[1] == a[2] and b[0] == "H":
        t, k = a[1], b[1]
        return {f"iE{t}{t}": Fraction(n - k, n) if t <= k else Fraction(-k, n)}
    if a[0] == "E" and b[0] == "E" and a[1] == a[2] and b[1] == b[2] and a[3] != "1" and b[3] != "1":
        t, s = a[1], b[1]
        if t != s:
            return {}
        if a[3] == b[3]:
            return _lin((1, _h(n, t - 1)), (-1, _h(n, t)))
        cyc = {("i", "j"): ("k", 1), ("j", "k"): ("i", 1), ("k", "i"): ("j", 1),
               ("j", "i"): ("k", -1), ("k", "j"): ("i", -1), ("i", "k"): ("j", -1)}
        u, sign = cyc[(a[3], b[3])]
        return {f"{u}E{t}{t}": Fraction(sign)}
    return None


def table_gamma(n: int, x: str, y: str) -> Fraction | None:
    def key(s):
        if s.startswith("H"):
            return ("H", int(s[1:]))
        if s[0] in "ijk":
            return ("Im", s[0], int(s[2]), int(s[3]))
        return ("E", int(s[1]), int(s[2]))

    a, b = key(x), key(y)
    if a[0] == "H" and b[0] == "H":
        i, j = sorted((a[1], b[1]))
        return Fraction(-i * (n - j), n * n)
    if {a[0], b[0]} == {"H", "E"}:
        return Fraction(0)
    if a[0] == "E" and b[0] == "E":
        return Fraction(-1, n) if (a[2] == b[1] and a[1] == b[2]) else Fraction(0)
    if a[0] == "Im" and b[0] == "Im" and a[1] == b[1] == "i" and a[2] == a[3] == b[2] == b[3]:
        return Fraction(1, n)
    return None


def table_defects(model: LieAlgebraModel) -> list[str]:
    """Basis pairs where the canonical connection disagrees with the closed-form tables."""
    conn = canonical_for(model)
    _, _, gam = ricci_and_p(conn)
    names = model.names
    bad = []
    for a, x in enumerate(names):
        for b, y in enumerate(names):
            want = table_nabla(model.n, x, y)
            if want is not None:
                got = {names[c]: v for c, v in conn.nabla(a, b).items()}
                if got != want:
                    bad.append(f"nabla_{x} {y}")
            g = table_gamma(model.n, x, y)
            if g is not None and gam[a][b] != g:
                bad.append(f"gamma({x},{y})")
    return bad


def gamma_calibration_defects(model: LieAlgebraModel) -> list[tuple[int, int]]:
    """Pairs where gamma differs from -Re tr(XY)/n."""
    _, _, gam = ricci_and_p(canonical_for(model))
    mats = model.matrices
    return [(a, b) for a in range(model.dim) for b in range(model.dim)
            if gam[a][b] != -re_trace(mats[a] @ mats[b]) / model.n]


# -- independent count of the obstructed subsets -------------------------------

def composition_count(n: int) -> int:
    """Subsets containing 1 and n-1 with gaps in {1, 2}, other than the full set."""
    total = 0
    for parts in range(n - 1):
        for gaps in itertools.product((1, 2), repeat=parts):
            if sum(gaps) == n - 2 and any(g == 2 for g in gaps):
                total += 1
    return total


# -- suites ---------------------------------------------------------------------

def suite_tensors() -> list[Check]:
    out = []
    for field_, ns in (("R", (2, 3, 4, 5)), ("H", (2, 3))):
        for n in ns:
            model = build_algebra(field_, n)
            conn = canonical_for(model)
            w = weyl(conn)
            t = torsion_defect(conn)
            out.append(Check(f"sl({n},{field_}) canonical: Weyl = 0, torsion = 0", not w and not t,
                             f"{len(w)} Weyl, {len(t)} torsion defects"))
            bad = gamma_calibration_defects(model)
            out.append(Check(f"sl({n},{field_}) gamma = -Re tr(XY)/n", not bad, f"{len(bad)} mismatches"))
    for field_, ns in (("R", (2, 3, 4, 5, 6)), ("H", (2, 3))):
        for n in ns:
            bad = table_defects(build_algebra(field_, n))
            out.append(Check(f"sl({n},{field_}) coefficient tables", not bad, ", ".join(bad[:5])))
    model = build_algebra("R", 4)
    sub = solvable_part(model, SimpleRootSubset(4, (3,)))
    restricted = induced_connection(graded_flat_connection(model, SimpleRootSubset(4, ())), sub)
    diff = connection_diff(restricted, graded_flat_connection(model, SimpleRootSubset(4, (3,))))
    got = {(sub.names[a], sub.names[b]): {sub.names[c]: v for c, v in d.items()} for a, b, d in diff}
    want = {("E12", "E24"): {"E14": Fraction(1, 6)}, ("E24", "E12"): {"E14": Fraction(1, 6)}}
    shown = ", ".join(f"({x},{y}): " + " ".join(f"{to_str(v)} {c}" for c, v in d.items()) for (x, y), d in got.items())
    out.append(Check("s[3] in sl(4,R): graded connections differ only at (E12,E24), (E24,E12)", got == want, shown))
    return out


def _structure_checks(field_: str, n: int) -> list[Check]:
    model = build_algebra(field_, n)
    canon = canonical_for(model)
    out = []
    for structure in (PARABOLIC, SOLVABLE):
        bad_auto, bad_hom = [], []
        for subset in proper_subsets(n):
            car = structure_carrier(model, subset, structure)
            if not (car.is_closed() and is_autoparallel(canon, car)):
                bad_auto.append(str(subset))
                continue
            if not verify_homomorphism(build_rep_symmetric(induced_connection(canon, car))):
                bad_hom.append(str(subset))
        out.append(Check(f"sl({n},{field_}) {structure}: closed and autoparallel", not bad_auto, " ".join(bad_auto)))
        out.append(Check(f"sl({n},{field_}) {structure}: representation is a homomorphism", not bad_hom, " ".join(bad_hom)))
    return out


def _solver_verdicts(field_: str, n: int, structure: str) -> dict[str, tuple[str, object, object]]:
    model = build_algebra(field_, n)
    canon = canonical_for(model)
    out = {}
    for subset in proper_subsets(n):
        conn = induced_connection(canon, structure_carrier(model, subset, structure))
        system = build_condition_system(conn)
        v = solve(system, conn)
        out[str(subset)] = (v.kind, v, system)
    return out


def suite_sl_r_small() -> list[Check]:
    out = []
    for n in (2, 3, 4, 5):
        out += _structure_checks("R", n)
        verdicts = _solver_verdicts("R", n, PARABOLIC)
        wrong = [s for s, (k, _, _) in verdicts.items()
                 if k != (NOT_FLAT if thm1_predicate(n, SimpleRootSubset.parse(n, s)) else FLAT)]
        out.append(Check(f"sl({n},R) parabolic verdicts follow the gap criterion", not wrong, " ".join(wrong)))
    return out


def suite_sl_h_small() -> list[Check]:
    out = []
    for n in (2, 3):
        out += _structure_checks("H", n)
        for s, (kind, v, system) in _solver_verdicts("H", n, PARABOLIC).items():
            last = v.certificate[-1] if v.certificate else ""
            ok = kind == NOT_FLAT and replay(system, v.tree) and "^2 = -" in last
            out.append(Check(f"sl({n},H) parabolic q[{s}] refuted by a negative square", ok, last.strip()))
    return out


def suite_theorem1() -> list[Check]:
    out = []
    for n, expected in ((6, 4), (7, 7)):
        verdicts = _solver_verdicts("R", n, PARABOLIC)
        mismatched = [s for s, (k, _, _) in verdicts.items()
                      if k != (NOT_FLAT if thm1_predicate(n, SimpleRootSubset.parse(n, s)) else FLAT)]
        unknown = [s for s, (k, _, _) in verdicts.items() if k not in (FLAT, NOT_FLAT)]
        nf = sum(k == NOT_FLAT for k, _, _ in verdicts.values())
        out.append(Check(f"n={n}: {len(verdicts)} verdicts match the gap criterion", not mismatched and not unknown,
                         f"mismatched {mismatched}, unknown {unknown}"))
        out.append(Check(f"n={n}: not_flat count {nf} = expected {expected} = composition count {composition_count(n)}",
                         nf == expected == composition_count(n)))
        bad = [s for s, (k, v, system) in verdicts.items() if k == NOT_FLAT and not replay(system, v.tree)]
        out.append(Check(f"n={n}: every refutation replays", not bad, " ".join(bad)))
    return out


def suite_solvable_all() -> list[Check]:
    out = []
    for n in range(2, 7):
        model = build_algebra("R", n)
        canon = canonical_for(model)
        bad = []
        for subset in proper_subsets(n):
            conn = induced_connection(canon, solvable_part(model, subset))
            xi = candidate_witnesses(SOLVABLE, n, subset, conn.carrier)[0]
            if not verify_witness(conn, xi):
                bad.append(str(subset))
        out.append(Check(f"sl({n},R) solvable parts: recipe witness verifies exactly", not bad, " ".join(bad)))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "sl-r-small": suite_sl_r_small,
    "sl-h-small": suite_sl_h_small,
    "theorem1": suite_theorem1,
    "solvable-all": suite_solvable_all,
    "tensors": suite_tensors,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
