"""Figure rendering from the command line.

    jch-plot --in sweep.csv --out fig.svg \
             --overlay visibility,excitation_variance --levels auto
"""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import AUTO_LEVELS, PlotSpec, render


def _levels(text):
    if text == "auto":
        return AUTO_LEVELS
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 'auto' or comma-separated numbers, got {text!r}"
        ) from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jch-plot",
        description="Render phase-diagram figures from a sweep CSV.",
    )
    parser.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    parser.add_argument("--out", dest="output_path", required=True, metavar="IMAGE",
                        help="output figure (.svg default format, .png works too)")
    parser.add_argument("--overlay", default="visibility,excitation_variance",
                        help="comma-separated overlay quantities")
    parser.add_argument("--levels", type=_levels, default=AUTO_LEVELS,
                        metavar="auto|l1,l2,...")
    parser.add_argument("--locus-pair", default="locus_1_2",
                        help="locus column to trace (default locus_1_2)")
    parser.add_argument("--timestamps", action="store_true",
                        help="keep timestamps in the output metadata")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input_csv,
        output_path=args.output_path,
        overlays=tuple(x for x in args.overlay.split(",") if x),
        levels=args.levels,
        locus_pair=args.locus_pair,
        timestamps=args.timestamps,
    )
    try:
        result = render(spec)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    drawn = ", ".join(
        f"{p.overlay}: {len(p.levels)} levels / {p.contour_path_count} paths"
        for p in result.panels
    )
    print(f"wrote {result.output_path}  ({drawn}; "
          f"{len(result.locus_points)} locus points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
