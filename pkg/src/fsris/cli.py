"""Command-line entry point: simulate, sweep-n, sweep-sel, selftest."""

import argparse
import sys
from dataclasses import fields, replace

from . import harness
from .config import ScenarioConfig, ValidationError, load_config, paper_defaults

_POS_KEYS = {"ap_pos", "ris_pos", "ue_pos"}


def _add_config_flags(parser):
    for f in fields(ScenarioConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.name in _POS_KEYS:
            parser.add_argument(flag, dest=f.name, metavar="X,Y,Z")
        elif f.type is int or f.name in ("K", "n_row", "n_col", "L_d", "L_a",
                                         "L_b", "seed"):
            parser.add_argument(flag, dest=f.name, type=int)
        else:
            parser.add_argument(flag, dest=f.name, type=float)


def _build_config(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = load_config(fh.read())
    else:
        cfg = paper_defaults()
    overrides = {}
    for f in fields(ScenarioConfig):
        val = getattr(args, f.name, None)
        if val is None:
            continue
        if f.name in _POS_KEYS:
            val = tuple(float(p) for p in val.split(","))
        overrides[f.name] = val
    return replace(cfg, **overrides) if overrides else cfg


def _int_list(text):
    return tuple(int(p) for p in text.split(",") if p)


def _method_list(text):
    return tuple(p.replace("-", "_") for p in text.split(",") if p)


def _common_flags(parser):
    parser.add_argument("--config", help="key = value scenario file")
    parser.add_argument("--out", default="results.csv", help="output path")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--realizations", type=int, default=100)
    parser.add_argument("--workers", type=int, default=1)
    _add_config_flags(parser)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fsris",
        description="RIS-assisted OFDM link simulator with frequency-selective "
                    "reflection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte-Carlo run at a single point")
    p.add_argument("--method", default="adjacent",
                   choices=("adjacent", "fixed-adjacent", "fixed_adjacent", "random"))
    p.add_argument("--sel-size", type=int, default=1)
    _common_flags(p)

    p = sub.add_parser("sweep-n", help="S/I vs RIS size sweep")
    p.add_argument("--n-list", type=_int_list, required=True,
                   help="comma-separated reflector counts")
    p.add_argument("--sel-sizes", type=_int_list, default=(1, 39, 199))
    p.add_argument("--methods", type=_method_list, default=("adjacent", "random"))
    _common_flags(p)

    p = sub.add_parser("sweep-sel", help="relative rate vs selection size sweep")
    p.add_argument("--sel-list", type=_int_list, required=True,
                   help="comma-separated selection sizes")
    p.add_argument("--methods", type=_method_list,
                   default=("adjacent", "fixed_adjacent", "random"))
    _common_flags(p)

    sub.add_parser("selftest", help="run the cross-module invariant suite")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        ok, _ = harness.selftest()
        return 0 if ok else 1
    try:
        cfg = _build_config(args)
        if args.command == "simulate":
            method = args.method.replace("-", "_")
            spec = harness.ExperimentSpec(
                base=cfg, methods=(method,), sel_sizes=(args.sel_size,),
                realizations=args.realizations, workers=args.workers)
            records = [harness.run_point(spec, cfg, method, args.sel_size)]
        elif args.command == "sweep-n":
            spec = harness.ExperimentSpec(
                base=cfg, methods=args.methods, sel_sizes=args.sel_sizes,
                ris_sizes=args.n_list, realizations=args.realizations,
                workers=args.workers)
            records = harness.sweep_ris_size(spec)
        else:  # sweep-sel
            spec = harness.ExperimentSpec(
                base=cfg, methods=args.methods, sel_sizes=args.sel_list,
                realizations=args.realizations, workers=args.workers)
            records = harness.sweep_selection_size(spec)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    harness.emit(records, args.format, args.out)
    print(f"wrote {len(records)} record(s) to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
