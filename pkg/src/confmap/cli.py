"""Command line entry point: ``confmap run`` and ``confmap verify``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import acceptance, report
from .config import OUTPUTS, ConfigError, parse_config

LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG}


def _emit_list(text: str) -> tuple[str, ...]:
    items = tuple(s.strip() for s in text.split(",") if s.strip())
    items = tuple("json" if s == "grid_json" else s for s in items)
    bad = [s for s in items if s not in OUTPUTS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"--emit takes a comma list drawn from {','.join(OUTPUTS)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confmap", description="Forward and backward numerical conformal maps.")
    parser.add_argument("--verbosity", "-v", type=int, choices=sorted(LEVELS), default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a convergence sweep from a JSON config")
    run.add_argument("--config", required=True, help="path to the JSON run configuration")
    run.add_argument("--out-dir", default=".", help="directory for sweep.csv and grid files")
    run.add_argument("--emit", type=_emit_list, default=None,
                     help="comma list of csv,json,svg (default: the config's outputs)")

    sub.add_parser("verify", help="run the acceptance checks; exit status 1 on any failure")
    return parser


def cmd_run(args) -> int:
    try:
        config = parse_config(args.config)
    except ConfigError as exc:
        print(f"confmap: {exc}", file=sys.stderr)
        return 2
    records = report.run(config, args.out_dir, args.emit)
    failed = [r.N for r in records if r.error]
    for r in records:
        logging.info("N=%d err_f=%s err_b=%s", r.N, r.err_forward, r.err_backward)
    if failed:
        print(f"confmap: builds failed for N={failed}; see sweep.log", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    return 0 if acceptance.run_all() else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=LEVELS[args.verbosity], format="%(levelname)s %(name)s: %(message)s")
    if args.command == "run":
        return cmd_run(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
