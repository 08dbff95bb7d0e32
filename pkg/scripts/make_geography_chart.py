#!/usr/bin/env python3
"""Emit the geography chart of (chi_h, c) lattice points as TSV and SVG."""

import argparse
import pathlib

from m4calc.geography import chart_svg, chart_tsv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--chi-max", type=int, default=10)
    parser.add_argument("--spin", action="store_true",
                        help="restrict to spin-admissible points (c = 8*chi_h mod 16)")
    parser.add_argument("--out-dir", default=".")
    args = parser.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    suffix = "_spin" if args.spin else ""
    tsv_path = out / f"geography_chi{args.chi_max}{suffix}.tsv"
    svg_path = out / f"geography_chi{args.chi_max}{suffix}.svg"
    tsv_path.write_text(chart_tsv(args.chi_max, spin=args.spin))
    svg_path.write_text(chart_svg(args.chi_max, spin=args.spin))
    print(f"wrote {tsv_path}")
    print(f"wrote {svg_path}")


if __name__ == "__main__":
    main()
