"""Decide every parabolic subalgebra of sl(n, R) for a range of n and compare with the gap criterion.

    python scripts/enumerate_parabolics.py --min-n 3 --max-n 7
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from projflat import DecideOptions, build_algebra, decide, dynkin_render, proper_subsets, thm1_predicate
from projflat.decider import NOT_FLAT, PARABOLIC, UNKNOWN
from projflat.suites import composition_count


@dataclass(frozen=True)
class SweepConfig:
    min_n: int = 3
    max_n: int = 7
    field: str = "R"
    oracle: bool = False


def sweep(cfg: SweepConfig) -> int:
    mismatches = 0
    opts = DecideOptions(oracle=cfg.oracle)
    for n in range(cfg.min_n, cfg.max_n + 1):
        t0 = time.perf_counter()
        model = build_algebra(cfg.field, n)
        refuted, unknown = [], 0
        for subset in proper_subsets(n):
            d = decide(model, subset, PARABOLIC, opts)
            kind = d.verdict.kind
            unknown += kind == UNKNOWN
            if kind == NOT_FLAT:
                refuted.append(dynkin_render(n, subset))
            if cfg.field == "R" and (kind == NOT_FLAT) != thm1_predicate(n, subset):
                mismatches += 1
                print(f"  mismatch at n={n} subset {subset}: {kind}")
        expected = composition_count(n) if cfg.field == "R" else 2 ** (n - 1) - 1
        print(f"sl({n},{cfg.field}): {2 ** (n - 1) - 1} parabolics, {len(refuted)} not_flat "
              f"(expected {expected}), {unknown} unknown, {time.perf_counter() - t0:.1f}s")
        for diagram in refuted:
            print(f"    {diagram}")
    return mismatches


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min-n", type=int, default=SweepConfig.min_n)
    p.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    p.add_argument("--field", choices=["R", "H"], default="R")
    p.add_argument("--oracle", action="store_true", help="also run the invariant-polynomial cross-check")
    a = p.parse_args()
    raise SystemExit(1 if sweep(SweepConfig(a.min_n, a.max_n, a.field, a.oracle)) else 0)


if __name__ == "__main__":
    main()
