"""Print the refutation certificate for every parabolic subalgebra of sl(n, H)."""

from __future__ import annotations

import argparse

from projflat import DecideOptions, build_algebra, decide, proper_subsets
from projflat.decider import PARABOLIC, replay


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("ns", nargs="*", type=int, default=[2, 3])
    args = p.parse_args()
    for n in args.ns:
        model = build_algebra("H", n)
        for subset in proper_subsets(n):
            d = decide(model, subset, PARABOLIC, DecideOptions(oracle=False))
            ok = replay(d.system, d.verdict.tree) if d.verdict.tree else False
            print(f"== sl({n},H) parabolic, subset {subset}: {d.verdict.kind}, dim {d.carrier.dim}, "
                  f"replay {'ok' if ok else 'FAILED'}")
            for line in d.verdict.certificate or ():
                print("   " + line)


if __name__ == "__main__":
    main()
