"""Command-line front end.

Usage: statlab <subcommand> [--seed N] [--reps N] [--out DIR] [--figures]
[--config FILE] plus per-subcommand flags.  Flag values override config-file
values, which override built-in defaults.  The STATLAB_OUT environment
variable overrides the default output directory (flags still win).
Exit status: 0 success, 2 usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import DEFAULT_SEED
from .report import RunConfig, run_and_report


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _parse_sizes(text: str) -> tuple[int, ...]:
    return tuple(int(s) for s in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statlab",
        description="Analytic and simulated answers to four statistics "
        "problems, with reproducible reports.",
        epilog="Output directory default can also be set via the STATLAB_OUT "
        "environment variable; an explicit --out always wins.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"root RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--reps", type=int, default=None,
                        help="override the number of simulation replicates")
    common.add_argument("--out", type=Path, default=None,
                        help="output directory (default statlab_out)")
    common.add_argument("--figures", action="store_true", default=None,
                        help="also emit SVG figures")
    common.add_argument("--config", type=Path, default=None,
                        help="JSON config file with defaults for any flag")
    common.add_argument("--workers", type=int, default=None,
                        help="worker threads for replicates (default 1)")

    p = sub.add_parser("pooling", parents=[common],
                       help="pooled blood testing costs and optimal pool size")
    p.add_argument("--p", type=float, default=None, help="prevalence")
    p.add_argument("--N", type=int, default=None, help="population size")
    p.add_argument("--k-range", type=_parse_range, default=None,
                   metavar="LO:HI", help="pool-size range, e.g. 2:10")

    m = sub.add_parser("mh", parents=[common],
                       help="Metropolis-Hastings sampling of the fixed target")
    m.add_argument("--burn-in", type=int, default=None)
    m.add_argument("--samples", type=int, default=None)
    m.add_argument("--proposal-sd", type=float, default=None)

    e = sub.add_parser("estimator", parents=[common],
                       help="IQR-based vs usual scale estimator efficiency")
    e.add_argument("--sizes", type=_parse_sizes, default=None,
                   metavar="N1,N2", help="sample sizes, e.g. 100,400")
    e.add_argument("--sigma", type=float, default=None, help="true sigma")

    g = sub.add_parser("gof", parents=[common],
                       help="chi-square statistic null-distribution study")
    g.add_argument("--bins", type=int, default=None)
    g.add_argument("--sizes", type=_parse_sizes, default=None,
                   metavar="N1,N2", help="sample sizes, e.g. 16,64")

    sub.add_parser("all", parents=[common], help="run every subcommand")
    return parser


_OPTION_KEYS = {
    "pooling": ("p", "N", "k_range"),
    "mh": ("burn_in", "samples", "proposal_sd"),
    "estimator": ("sizes", "sigma"),
    "gof": ("bins", "sizes"),
    "all": (),
}


def parse_config(argv: list[str]) -> RunConfig:
    """Parse argv into a RunConfig, applying flag > config file > default."""
    args = build_parser().parse_args(argv)
    file_values: dict = {}
    if args.config is not None:
        file_values = json.loads(Path(args.config).read_text())

    def pick(name, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return default

    env_out = os.environ.get("STATLAB_OUT")
    default_out = Path(env_out) if env_out else Path("statlab_out")
    options = {}
    for key in _OPTION_KEYS[args.subcommand]:
        value = pick(key, None)
        if value is not None:
            options[key] = value
    return RunConfig(
        subcommand=args.subcommand,
        root_seed=int(pick("seed", DEFAULT_SEED)),
        n_reps=pick("reps", None),
        output_dir=Path(pick("out", default_out)),
        emit_figures=bool(pick("figures", False)),
        options=options,
        n_workers=int(pick("workers", 1)),
    )


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"statlab: {exc}", file=sys.stderr)
        return 2
    try:
        reports = run_and_report(config)
    except Exception as exc:
        print(f"statlab: {exc}", file=sys.stderr)
        return 1
    for report in reports:
        print(f"{report.subcommand}: wrote {len(report.tables)} tables, "
              f"{len(report.figures)} figures to {config.output_dir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
