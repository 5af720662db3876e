"""Check that the recipe hyperplane divides phi_f on every small solvable part.

For s_Lambda' the form is sum_i i*x_i - n*x_{m+1}, summed over the H^i in the
carrier.  Cases with m + 1 above ``--cap`` are skipped.
"""

from __future__ import annotations

import argparse
import time

from projflat import build_algebra, build_rep_symmetric, induced_connection, invariant_poly, proper_subsets
from projflat.decider import canonical_for
from projflat.parabolic import solvable_part
from projflat.poly import MultiPoly, linear_factor_divides
from projflat.report import linear_to_str


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--field", choices=["R", "H"], default="R")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--cap", type=int, default=12)
    args = p.parse_args()
    failures = 0
    for n in range(2, args.max_n + 1):
        model = build_algebra(args.field, n)
        conn = canonical_for(model)
        for subset in proper_subsets(n):
            sub = solvable_part(model, subset)
            m = sub.dim
            if m + 1 > args.cap:
                continue
            coeffs = [0] * (m + 1)
            for i in subset.complement:
                coeffs[sub.names.index(f"H{i}")] = i
            coeffs[m] = -n
            t0 = time.perf_counter()
            phi = invariant_poly(build_rep_symmetric(induced_connection(conn, sub)), cap=args.cap)
            ok, quo = linear_factor_divides(phi, MultiPoly.linear(coeffs))
            failures += not ok
            print(f"n={n} s[{subset}] m={m}: deg phi {phi.degree()}, {len(phi.terms)} terms; "
                  f"{linear_to_str(coeffs)} {'divides' if ok else 'DOES NOT divide'} "
                  f"({time.perf_counter() - t0:.2f}s)")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
