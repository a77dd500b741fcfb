"""Command-line front end.

    antibunch sweep --config scan.toml --out scan.csv
    antibunch sweep --preset fig8a --format json --jobs 4

Exit codes: 0 on success, 2 for configuration problems, 3 when more than 10%
of grid points had to be flagged (output is still written).
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .errors import ConfigError
from .sweep import (ENGINES, PRESET_NAMES, SweepSpec, export, figure_preset,
                    load_config, run_sweep, validate_spec)
from .sweep import _DEFAULT_OBSERVABLES, _ENGINE_OBSERVABLES

FLAGGED_FRACTION_LIMIT = 0.10

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antibunch",
        description="Photon-statistics parameter sweeps for two Rydberg atoms "
                    "in a driven cavity.")
    parser.add_argument("--version", action="version", version=f"antibunch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate a parameter grid and export it")
    sweep.add_argument("--config", metavar="FILE", help="TOML sweep description")
    sweep.add_argument("--preset", metavar="NAME", choices=PRESET_NAMES,
                       help=f"named preset ({', '.join(PRESET_NAMES)})")
    sweep.add_argument("--out", metavar="PATH", help="output path "
                       "(default: sweep.<format>)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--jobs", type=int, default=1, metavar="K",
                       help="evaluate grid points across K processes")
    sweep.add_argument("--engine", choices=ENGINES, help="override the engine")
    sweep.add_argument("--fock", metavar="N|auto", help="override the Fock cutoff")
    return parser


def _resolve_spec(args: argparse.Namespace) -> SweepSpec:
    if not args.config and not args.preset:
        raise ConfigError("need --config and/or --preset")
    if args.config:
        # the config file may itself name a preset; --preset seeds the spec
        # only when the file does not choose its own starting point
        spec = load_config(args.config, default_preset=args.preset)
    else:
        spec = figure_preset(args.preset)

    updates = {}
    if args.engine and args.engine != spec.engine:
        updates["engine"] = args.engine
        allowed = _ENGINE_OBSERVABLES[args.engine]
        kept = tuple(o for o in spec.observables if o in allowed)
        updates["observables"] = kept or _DEFAULT_OBSERVABLES[args.engine]
    if args.fock:
        if args.fock == "auto":
            updates["fock"] = "auto"
        else:
            try:
                updates["fock"] = int(args.fock)
            except ValueError:
                raise ConfigError(f"--fock expects an integer or 'auto', "
                                  f"got {args.fock!r}") from None
    if updates:
        spec = replace(spec, **updates)
        validate_spec(spec)
    return spec


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = _resolve_spec(args)
        if args.jobs < 1:
            raise ConfigError(f"--jobs must be >= 1, got {args.jobs}")
    except ConfigError as bad:
        print(f"error: {bad}", file=sys.stderr)
        return EXIT_CONFIG

    result = run_sweep(spec, jobs=args.jobs)
    out = args.out or f"sweep.{args.format}"
    export(result, args.format, out)

    flagged = result.n_flagged
    total = result.n_points
    print(f"wrote {total} points to {out}"
          + (f" ({flagged} flagged)" if flagged else ""))
    if flagged > FLAGGED_FRACTION_LIMIT * total:
        print(f"error: {flagged}/{total} points flagged "
              f"(> {FLAGGED_FRACTION_LIMIT:.0%})", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
