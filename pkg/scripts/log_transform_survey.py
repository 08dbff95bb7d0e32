#!/usr/bin/env python3
"""Survey the generalized log transform on E(n): multiplier term counts,
coefficient sums, and the reduced-ring multiplicity law."""

import argparse

from m4calc.surgery import log_transform, seed
from m4calc.swring import reduce_by_torus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2, help="elliptic surface E(n)")
    parser.add_argument("--p-max", type=int, default=7)
    args = parser.parse_args()

    x = seed(f"E({args.n})")
    fiber = x.torus("fiber").cls
    base_sum = reduce_by_torus(x.sw, fiber).coefficient_sum()
    print(f"E({args.n}): reduced coefficient sum = {base_sum}")
    for p in range(1, args.p_max + 1):
        out = log_transform(x, "fiber", p)
        reduced = reduce_by_torus(out.sw, fiber)
        print(
            f"  p={p}: terms={out.sw.term_count()} "
            f"sum={out.sw.coefficient_sum()} "
            f"reduced_sum={reduced.coefficient_sum()} "
            f"(= {p} * {base_sum}) t={out.homeo.t}"
        )
        assert reduced.coefficient_sum() == p * base_sum


if __name__ == "__main__":
    main()
