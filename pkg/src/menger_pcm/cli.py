"""Command-line front end: ``menger-pcm <suite> CONFIG [options]``.

Exit status is 0 when no check fails, 1 when any check fails (the report is
still printed) and 2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .config import load_config
from .errors import ConfigError, PCMError
from .report import Report, emit_report
from .suites import SUITES, RunOptions

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PROG = "menger-pcm"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", type=Path, help="space definition (YAML)")
    common.add_argument("--tol", type=float, default=None,
                        help="inequality tolerance, overrides grids.tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized probes")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.add_argument("--out", type=Path, default=None, help="also write the report here")
    common.set_defaults(fmt="json")

    parser = argparse.ArgumentParser(
        prog=PROG, description="Verify probabilistic cone metric spaces from a config file.")
    sub = parser.add_subparsers(dest="suite", required=True, metavar="SUITE")
    helps = {
        "check-axioms": "cone, t-norm and PCM axioms",
        "diameter": "probabilistic diameter, FC-boundedness, diametral points, covers",
        "hausdorff-witness": "separating balls for random point pairs",
        "convexity": "convexity inequalities, strict convexity, ball convexity",
        "fixed-point": "pair condition and common fixed point of the configured maps",
        "full-suite": "everything above",
    }
    for name in SUITES:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def run(suite: str, config: Path, tol: float | None = None, seed: int = 0) -> Report:
    """Load ``config`` and run one suite; raises ConfigError on bad input."""
    cfg = load_config(config)
    if tol is not None:
        if not tol > 0:
            raise ConfigError(f"must be strictly positive, got {tol}", field="--tol")
        cfg.grids["tolerance"] = tol
    try:
        space = cfg.build_space()
    except PCMError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), field="kernel") from exc
    opts = RunOptions(tol=cfg.grids["tolerance"], seed=seed)
    start = time.perf_counter()
    checks = SUITES[suite](cfg, space, opts)
    return Report(suite, checks, (time.perf_counter() - start) * 1000.0)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = run(args.suite, args.config, args.tol, args.seed)
    except ConfigError as exc:
        print(f"{PROG}: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PCMError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = emit_report(report, args.fmt)
    print(text)
    if args.out is not None:
        args.out.write_text(text + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
