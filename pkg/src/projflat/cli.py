"""Command line front end: ``projflat analyze | enumerate | invariant | verify-suite``."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .decider import (DEFAULT_BRANCH_DEPTH, DEFAULT_ORACLE_CAP, FLAT, NOT_FLAT, PARABOLIC, SOLVABLE, UNKNOWN,
                      DecideOptions, candidate_witnesses, decide, solve)
from .errors import InvalidSubset, SizeCapExceeded
from .lie import build_algebra
from .parabolic import SimpleRootSubset, proper_subsets
from .poly import DEFAULT_SYMBOLIC_CAP, MultiPoly, linear_factor_divides
from .report import dumps, integral_linear_form, linear_to_str, tensor_dump, text_report, var_names
from .rep import build_rep_symmetric, invariant_poly
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class AnalysisRequest:
    field: str
    n: int
    subset: SimpleRootSubset
    structure: str
    options: DecideOptions

    @classmethod
    def from_args(cls, args) -> "AnalysisRequest":
        field = args.field.upper()
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        try:
            subset = SimpleRootSubset.parse(args.n, args.subset)
        except InvalidSubset as e:
            raise UsageError(str(e)) from None
        return cls(field, args.n, subset, args.structure, options_from(args))


def options_from(args) -> DecideOptions:
    if args.branch_depth < 0 or args.symbolic_cap < 1 or args.oracle_cap < 0:
        raise UsageError("caps and depths must be nonnegative")
    return DecideOptions(branch_depth=args.branch_depth, oracle_cap=min(args.oracle_cap, args.symbolic_cap))


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj) + "\n")


# -- commands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    req = AnalysisRequest.from_args(args)
    d = decide(build_algebra(req.field, req.n), req.subset, req.structure, req.options)
    if args.dump_tensors:
        _write_json(args.dump_tensors, tensor_dump(d))
    print(dumps(d.to_json()) if args.json else text_report(d))
    return EXIT_OK


def _enumerate_one(job) -> dict:
    field, n, indices, structure, options = job
    d = decide(build_algebra(field, n), SimpleRootSubset(n, indices), structure, options)
    return d.to_json()


def cmd_enumerate(args) -> int:
    field = args.field.upper()
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    options = options_from(args)
    jobs = [(field, args.n, s.indices, args.structure, options) for s in proper_subsets(args.n)]
    threads = max(1, args.threads)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_enumerate_one, jobs))
    else:
        rows = [_enumerate_one(j) for j in jobs]
    counts = {k: sum(r["verdict"] == k for r in rows) for k in (FLAT, NOT_FLAT, UNKNOWN)}
    if args.json:
        print(dumps({"field": field, "n": args.n, "structure": args.structure, "rows": rows,
                     "summary": {"subsets": len(rows), **counts}}))
        return EXIT_OK
    width = max(len("subset"), *(len(r["subset"]) for r in rows))
    dw = max(len("diagram"), len(rows[0]["diagram"]) if rows else 0)
    print(f"sl({args.n},{field}) {args.structure} subalgebras")
    print(f"{'subset':<{width}}  {'diagram':<{dw}}  {'dim':>4}  verdict")
    for r in rows:
        print(f"{r['subset']:<{width}}  {r['diagram']:<{dw}}  {r['dim']:>4}  {r['verdict']}")
    print(f"summary: {len(rows)} subsets, {counts[FLAT]} flat, {counts[NOT_FLAT]} not_flat, {counts[UNKNOWN]} unknown")
    return EXIT_OK


def cmd_invariant(args) -> int:
    req = AnalysisRequest.from_args(args)
    model = build_algebra(req.field, req.n)
    d = decide(model, req.subset, req.structure, replace(req.options, oracle=False))
    rep = build_rep_symmetric(d.connection)
    m = rep.dim
    try:
        phi = invariant_poly(rep, cap=args.symbolic_cap)
    except SizeCapExceeded as e:
        print(f"error: {e}; raise --symbolic-cap or rely on the probabilistic oracle of `analyze`", file=sys.stderr)
        return EXIT_USAGE
    hyperplanes = [tuple(x) for x in candidate_witnesses(req.structure, req.n, req.subset, d.carrier)]
    for reverse in (False, True):
        v = solve(d.system, d.connection, depth=req.options.branch_depth, reverse=reverse)
        if v.kind == FLAT:
            hyperplanes.append(tuple(v.witness))
    if d.verdict.witness is not None:
        hyperplanes.append(tuple(d.verdict.witness))
    factors = []
    seen = set()
    for xi in hyperplanes:
        ints = integral_linear_form(list(xi) + [Fraction(1)])
        key = tuple(ints)
        if key in seen:
            continue
        seen.add(key)
        ok, quo = linear_factor_divides(phi, MultiPoly.linear(ints))
        factors.append({"factor": linear_to_str(ints), "coefficients": list(ints), "divides": ok,
                        "quotient_degree": quo.degree() if ok else None})
    names = var_names(m)
    out = {
        "field": req.field, "n": req.n, "subset": str(req.subset), "structure": req.structure, "dim": m,
        "variables": dict(zip(names, list(d.carrier.names) + ["last"])),
        "degree": phi.degree(),
        "terms": len(phi.terms),
        "polynomial": phi.to_str(names),
        "serial": [[e, c] for e, c in phi.to_serial()],
        "candidate_factors": factors,
    }
    if args.dump_tensors:
        _write_json(args.dump_tensors, tensor_dump(d))
    if args.json:
        print(dumps(out))
        return EXIT_OK
    print(f"phi_f for sl({req.n},{req.field}) {req.structure} subset {req.subset}: degree {out['degree']}, "
          f"{out['terms']} terms in {m + 1} variables")
    print("variables: " + ", ".join(f"{k}={v}" for k, v in out["variables"].items()))
    print(f"phi = {out['polynomial']}")
    for f in factors:
        status = f"divides, quotient degree {f['quotient_degree']}" if f["divides"] else "does not divide"
        print(f"candidate factor {f['factor']}: {status}")
    return EXIT_OK


def cmd_verify_suite(args) -> int:
    checks = run_suite(args.suite)
    passed = all(c.passed for c in checks)
    if args.json:
        print(dumps({"suite": args.suite, "passed": passed,
                     "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]}))
    else:
        for c in checks:
            print(c.line())
        print(f"suite {args.suite}: {'pass' if passed else 'FAIL'} ({sum(c.passed for c in checks)}/{len(checks)} checks)")
    return EXIT_OK if passed else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dump-tensors", metavar="PATH", help="write connection and representation tensors as JSON")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes for enumerate")
    common.add_argument("--symbolic-cap", type=int, default=DEFAULT_SYMBOLIC_CAP,
                        help="largest m+1 for symbolic determinants (default %(default)s)")
    common.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP,
                        help="largest m+1 for the exact hyperplane cross-check in verdicts (default %(default)s)")
    common.add_argument("--branch-depth", type=int, default=DEFAULT_BRANCH_DEPTH, help="solver branch depth limit")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--field", choices=["r", "h", "R", "H"], required=True)
    target.add_argument("--n", type=int, required=True, help="matrix size")
    target.add_argument("--subset", default="empty", help='simple roots kept, e.g. "1,3,5" or "empty"')
    target.add_argument("--structure", choices=[PARABOLIC, SOLVABLE], default=PARABOLIC)

    p = argparse.ArgumentParser(prog="projflat", description="Projective flatness of connections on parabolic "
                                "and solvable subalgebras of sl(n,R) and sl(n,H).")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common, target], help="decide one subalgebra")
    a.set_defaults(func=cmd_analyze)
    e = sub.add_parser("enumerate", parents=[common], help="decide every proper subset")
    e.add_argument("--field", choices=["r", "h", "R", "H"], required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--structure", choices=[PARABOLIC, SOLVABLE], default=PARABOLIC)
    e.set_defaults(func=cmd_enumerate)
    i = sub.add_parser("invariant", parents=[common, target], help="relative invariant and its linear factors")
    i.set_defaults(func=cmd_invariant)
    v = sub.add_parser("verify-suite", parents=[common], help="run a named acceptance suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.set_defaults(func=cmd_verify_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))  # exits with status 2
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
