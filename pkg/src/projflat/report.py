"""JSON and text rendering of decisions, tensors and invariants."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .connection import Connection, ricci_and_p
from .decider import Decision
from .poly import MultiPoly
from .rational import to_str
from .rep import build_rep_symmetric


@lru_cache(maxsize=None)
def verdict_schema() -> dict:
    return json.loads(resources.files("projflat").joinpath("data/verdict.schema.json").read_text())


def dumps(obj) -> str:
    """Canonical JSON text: stable key order, two-space indent."""
    return json.dumps(obj, indent=2, sort_keys=True)


def connection_tensors(conn: Connection) -> dict:
    """Nonzero coefficients of nabla, Ric, P and gamma keyed by basis-element names."""
    names = conn.names
    ric, P, gam = ricci_and_p(conn)

    def form(f):
        return {f"{names[a]},{names[b]}": to_str(f[a][b])
                for a in range(conn.dim) for b in range(conn.dim) if f[a][b]}

    nabla = {}
    for (a, b) in sorted(conn.coeffs):
        nabla[f"{names[a]},{names[b]}"] = {names[c]: to_str(x) for c, x in sorted(conn.coeffs[(a, b)].items())}
    out = {"basis": list(names), "nabla": nabla, "ricci": form(ric), "P": form(P)}
    if gam is not None:
        out["gamma"] = form(gam)
    return out


def tensor_dump(decision: Decision) -> dict:
    return {
        "connection": connection_tensors(decision.connection),
        "representation": build_rep_symmetric(decision.connection).to_json(),
    }


def text_report(decision: Decision) -> str:
    j = decision.to_json()
    yes = {True: "yes", False: "NO"}
    lines = [
        f"sl({j['n']},{j['field']}) {j['structure']} subalgebra for subset {j['subset']}",
        f"  diagram  {j['diagram']}",
        f"  dim      {j['dim']}",
        f"  verdict  {j['verdict']}",
    ]
    ck = j["checks"]
    oracle = ck["oracle"]
    if "oracle_agrees" in ck:
        oracle += ", agrees" if ck["oracle_agrees"] else ", DISAGREES"
    lines.append(f"  checks   autoparallel {yes[ck['autoparallel']]}, homomorphism {yes[ck['homomorphism']]}, oracle {oracle}")
    if "witness" in j:
        names = decision.carrier.names
        shown = [f"{nm}={w}" for nm, w in zip(names, j["witness"]) if w != "0"] or ["0"]
        lines.append("  witness  " + " ".join(shown))
    if "reason" in j:
        lines.append(f"  reason   {j['reason']}")
    if "certificate" in j:
        lines.append("  certificate:")
        lines += ["    " + s for s in j["certificate"]]
    return "\n".join(lines)


def integral_linear_form(coeffs: list[Fraction]) -> list[int]:
    """Scale to coprime integers with a positive first nonzero entry."""
    den = math.lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = math.gcd(*ints) or 1
    ints = [x // g for x in ints]
    first = next((x for x in ints if x), 1)
    return [-x for x in ints] if first < 0 else ints


def var_names(m: int) -> list[str]:
    return [f"x{i + 1}" for i in range(m + 1)]


def linear_to_str(ints: list[int]) -> str:
    return MultiPoly.linear(ints).to_str(var_names(len(ints) - 1))
