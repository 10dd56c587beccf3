"""Command line front end.

    jch sweep --cavities 2 --delta-over-g -4:4:81 --t-over-g 0:2:41 \
              --boundary open --coupling uniform --workers 4 --seed 7 \
              --out sweep.csv
    jch single --cavities 2 --delta 0.5 --t 1.0
    jch validate-perturbation --cavities 2 --g-over-t 1e-3

Site indices on the command line are 1-based, matching the CSV column
labels (dN_1, locus_1_2, ...).  Exit codes: 0 on success, 2 when any
sweep row carries a failed solver status.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .perturbation import validate_against_numerics
from .sweep import SweepConfig, locate_locus, run_sweep


def _range_spec(text):
    try:
        lo, hi, steps = text.split(":")
        return (float(lo), float(hi), int(steps))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected MIN:MAX:STEPS, got {text!r}"
        ) from None


def _coupling_spec(text):
    if text == "uniform":
        return ("uniform", None)
    if text.startswith("pair="):
        try:
            i, j = (int(x) for x in text[len("pair="):].split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"expected pair=I,J with 1-based sites, got {text!r}"
            ) from None
        if i < 1 or j < 1 or i == j:
            raise argparse.ArgumentTypeError("pair sites must be distinct and >= 1")
        return ("pair", (i - 1, j - 1))
    raise argparse.ArgumentTypeError(f"coupling must be 'uniform' or 'pair=I,J', got {text!r}")


def _add_common(p):
    p.add_argument("--cavities", type=int, required=True, metavar="N")
    p.add_argument("--excitations", type=int, default=None, metavar="M",
                   help="total excitation sector (default: one per cavity)")
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--coupling", type=_coupling_spec, default=("uniform", None),
                   metavar="uniform|pair=I,J")
    p.add_argument("--g", type=float, default=1.0,
                   help="coupling strength / energy unit; 0 switches the grid "
                        "axes to absolute units (default 1)")
    p.add_argument("--tol", type=float, default=1e-10, help="solver residual tolerance")
    p.add_argument("--seed", type=int, default=7)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jch",
        description="Exact-diagonalization witnesses of the Mott-superfluid "
                    "transition in a doped cavity array.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep_p = sub.add_parser("sweep", help="scan the detuning-hopping plane to CSV")
    _add_common(sweep_p)
    sweep_p.add_argument("--delta-over-g", type=_range_spec, default=(-4.0, 4.0, 81),
                         metavar="MIN:MAX:STEPS")
    sweep_p.add_argument("--t-over-g", type=_range_spec, default=(0.0, 2.0, 41),
                         metavar="MIN:MAX:STEPS")
    sweep_p.add_argument("--workers", type=int, default=1, metavar="W")
    sweep_p.add_argument("--out", required=True, metavar="PATH")
    sweep_p.add_argument("--print-locus", action="store_true",
                         help="also print the first pair's zero-crossing polyline")

    single_p = sub.add_parser("single", help="inspect one grid point")
    _add_common(single_p)
    single_p.add_argument("--delta", type=float, required=True)
    single_p.add_argument("--t", type=float, required=True)

    val_p = sub.add_parser("validate-perturbation",
                           help="compare the analytic degenerate-point oracle "
                                "against the numeric pipeline")
    val_p.add_argument("--cavities", type=int, required=True, metavar="N")
    val_p.add_argument("--g-over-t", type=float, default=1e-3)
    val_p.add_argument("--pair", type=str, default="1,2", metavar="I,J",
                       help="coupled sites, 1-based (default 1,2)")
    val_p.add_argument("--tol", type=float, default=1e-12)
    val_p.add_argument("--seed", type=int, default=0)
    return parser


def _config_from_args(args, **overrides):
    pattern, pair = args.coupling
    kwargs = dict(
        n_cavities=args.cavities,
        total_excitations=args.excitations,
        boundary=args.boundary,
        coupling_pattern=pattern,
        g=args.g,
        solver_tol=args.tol,
        seed=args.seed,
    )
    if pair is not None:
        kwargs["pair"] = pair
    kwargs.update(overrides)
    return SweepConfig(**kwargs)


def cmd_sweep(args):
    config = _config_from_args(
        args,
        delta_over_g=args.delta_over_g,
        t_over_g=args.t_over_g,
        worker_count=args.workers,
        output_path=args.out,
    )
    records = run_sweep(config)
    failed = sum(1 for r in records if r.status != "ok")
    print(f"wrote {len(records)} rows to {args.out}"
          + (f" ({failed} failed)" if failed else ""))
    if args.print_locus:
        for d, t in locate_locus(records, pair=(0, 1), n_cavities=args.cavities):
            print(f"locus {d!r},{t!r}")
    return 2 if failed else 0


def cmd_single(args):
    config = _config_from_args(
        args,
        delta_over_g=(args.delta, args.delta, 1),
        t_over_g=(args.t, args.t, 1),
    )
    rec = run_sweep(config)[0]
    print(f"delta={rec.delta_over_g!r} t={rec.t_over_g!r} status={rec.status}")
    if rec.status == "ok":
        print(f"ground_energy={rec.ground_energy!r}")
        print(f"degenerate={int(rec.degenerate)}")
        print(f"avg_concurrence={'' if rec.avg_concurrence is None else repr(rec.avg_concurrence)}")
        print(f"visibility={rec.visibility!r} defined={int(rec.visibility_defined)}")
        print(f"avg_excitation_variance={rec.avg_excitation_variance!r}")
        for i, v in enumerate(rec.site_variances):
            print(f"dN_{i + 1}={v!r}")
    return 0 if rec.status == "ok" else 2


def cmd_validate(args):
    try:
        i, j = (int(x) for x in args.pair.split(","))
    except ValueError:
        print(f"bad --pair value {args.pair!r}", file=sys.stderr)
        return 2
    report = validate_against_numerics(
        args.cavities, g_over_t=args.g_over_t, pair=(i - 1, j - 1),
        tol=args.tol, seed=args.seed,
    )
    sys.stdout.write(report.to_csv())
    return 0


_RANGE_FLAGS = ("--delta-over-g", "--t-over-g")


def _merge_range_flags(argv):
    # argparse rejects values like "-4:4:81" after a space; fold them into
    # the --flag=value form so negative range minima just work
    out = []
    skip = False
    for idx, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[idx + 1] if idx + 1 < len(argv) else None
        if arg in _RANGE_FLAGS and nxt is not None and nxt.startswith("-") and ":" in nxt:
            out.append(f"{arg}={nxt}")
            skip = True
        else:
            out.append(arg)
    return out


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = build_parser().parse_args(_merge_range_flags(argv))
    handlers = {
        "sweep": cmd_sweep,
        "single": cmd_single,
        "validate-perturbation": cmd_validate,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
