"""
Command-line entry point.

    rde run --config FILE            run the configured experiment
    rde compare --config FILE        same, with planner=both
    rde gen-map --width W --height H --blobs N --seed S --out FILE
    rde --version
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from src import __version__
from src.data import load_experiment_config
from src.world import corpus_map_params, generate_synthetic_map, save_map

from .runner import run_experiment

LOGGER = logging.getLogger(__name__)


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _run(args: argparse.Namespace, planner: Optional[str] = None) -> int:
    overrides = {}
    if planner is not None:
        overrides["planner"] = planner
    if args.out_dir is not None:
        overrides["out_dir"] = args.out_dir
    config = load_experiment_config(args.config, **overrides)
    report = run_experiment(config, workers=args.workers, progress=not args.quiet and sys.stderr.isatty())
    for path in report.written:
        print(f"Wrote: {path}")
    return 0


def _gen_map(args: argparse.Namespace) -> int:
    if args.corpus:
        params = corpus_map_params(args.corpus)
    else:
        missing = [name for name in ("width", "height", "blobs", "seed") if getattr(args, name) is None]
        if missing:
            raise ValueError(f"gen-map needs --{' --'.join(missing)} (or --corpus NAME)")
        params = {
            "width": args.width,
            "height": args.height,
            "blobs": args.blobs,
            "seed": args.seed,
            "radius_min": args.blobs_radius_min,
            "radius_max": args.blobs_radius_max,
            "background": args.background,
        }
    world = generate_synthetic_map(**params)
    path = save_map(world, args.out, fmt=args.format)
    print(f"Wrote: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rde",
        description="Robustness-driven exploration experiments on likelihood grid maps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Log per-decision diagnostics.")
    parser.add_argument("--quiet", action="store_true", help="Only log warnings; no progress bar.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("run", "Run the experiment described by a config file."),
        ("compare", "Run RDE and the frontier baseline on paired trials."),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="Path to a key = value config file.")
        cmd.add_argument("--out-dir", default=None, help="Override out_dir from the config.")
        cmd.add_argument("--workers", type=int, default=1, help="Parallel trial processes.")

    gen = sub.add_parser("gen-map", help="Write a synthetic likelihood map.")
    gen.add_argument("--width", type=int, default=None)
    gen.add_argument("--height", type=int, default=None)
    gen.add_argument("--blobs", type=int, default=None)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--blobs-radius-min", type=float, default=3.0)
    gen.add_argument("--blobs-radius-max", type=float, default=5.0)
    gen.add_argument("--background", type=float, default=0.05)
    gen.add_argument("--corpus", default=None, help="Materialise a named corpus map instead.")
    gen.add_argument("--format", choices=["csv", "pgm"], default=None)
    gen.add_argument("--out", required=True, help="Output map file (.csv or .pgm).")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        if args.command == "run":
            return _run(args)
        if args.command == "compare":
            return _run(args, planner="both")
        return _gen_map(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
