"""Command-line scenario runner.

    pathgauge run CONFIG [--out DIR]
    pathgauge preset NAME [--out DIR] [--emit-config FILE]
    pathgauge list

Exit codes: 0 success, 2 invalid input (nothing written), 3 numerical failure.
The thread count for grid evaluation comes from PATHGAUGE_THREADS.
"""
from __future__ import annotations

import argparse
import difflib
import os
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, Scenario, dump_scenario, load_scenario, parse_scenario
from .errors import PathGaugeError
from .presets import preset_config, preset_names
from .runner import Runner, write_outputs

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def _overrides(scenario: Scenario, args) -> Scenario:
    tol = {}
    if args.tol is not None:
        tol["quad_tol"] = args.tol
    if args.quad_order is not None:
        tol["quad_order"] = args.quad_order
    data = scenario.model_dump(mode="json", exclude_none=True)
    data["tolerances"] = {**data["tolerances"], **tol}
    if args.seed is not None:
        data["seed"] = args.seed
    return parse_scenario(data)


def _execute(scenario: Scenario, out_dir: Path) -> int:
    try:
        outputs = Runner(scenario).run()
    except (PathGaugeError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure in scenario {scenario.name!r}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    written = write_outputs(outputs, out_dir)
    print(f"scenario {scenario.name}")
    for o, path in zip(outputs, written):
        print(f"  [{o.id}] -> {path}")
        for line in o.summary:
            print(f"      {line}")
    return EXIT_OK


def cmd_run(args) -> int:
    scenario = _overrides(load_scenario(args.config), args)
    out = Path(args.out) if args.out else Path("pathgauge-out") / scenario.name
    return _execute(scenario, out)


def cmd_preset(args) -> int:
    names = preset_names()
    if args.name not in names:
        close = difflib.get_close_matches(args.name, names, n=3, cutoff=0.3)
        hint = f"did you mean: {', '.join(close)}?" if close else f"available: {', '.join(names)}"
        print(f"unknown preset {args.name!r}; {hint}", file=sys.stderr)
        return EXIT_INVALID
    scenario = _overrides(parse_scenario(preset_config(args.name)), args)
    if args.emit_config:
        Path(args.emit_config).write_text(dump_scenario(scenario))
        print(f"config written to {args.emit_config}")
        return EXIT_OK
    out = Path(args.out) if args.out else Path("pathgauge-out") / scenario.name
    return _execute(scenario, out)


def cmd_list(args) -> int:
    for name in preset_names():
        print(name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathgauge",
                                     description="Path-dependent potentials, fluxes and quantization checks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory for CSV files (default pathgauge-out/<name>)")
    common.add_argument("--tol", type=float, help="override the quadrature tolerance")
    common.add_argument("--quad-order", type=int, help="override the Gauss-Legendre order")
    common.add_argument("--seed", type=int, help="override the seed for random grids")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run a scenario config (JSON)")
    p.add_argument("config")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("preset", parents=[common], help="run a built-in scenario")
    p.add_argument("name")
    p.add_argument("--emit-config", metavar="FILE", help="write the preset's config instead of running it")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("list", help="list built-in scenarios")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    threads = os.environ.get("PATHGAUGE_THREADS")
    if threads is not None and (not threads.isdigit() or int(threads) < 1):
        print(f"PATHGAUGE_THREADS must be a positive integer, got {threads!r}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
