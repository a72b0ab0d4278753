"""Command-line entry point: run, sweep, check, report."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from nsfg import __version__
from nsfg.config import settings
from nsfg.core.errors import ConfigError, NSFGError, UnknownSuiteError
from nsfg.core.logging import get_logger
from nsfg.harness.runner import EXIT_FAILURE, EXIT_OK, EXIT_USAGE

logger = logging.getLogger(__name__)


def _parse_values(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse sweep values {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsfg", description="Galerkin simulator for regularized Navier-Stokes-Fourier flow")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute one run from a YAML config")
    run_p.add_argument("config", type=Path)
    run_p.add_argument("--out", type=Path, default=None, help="run directory (default from the config)")

    sweep_p = sub.add_parser("sweep", help="repeat a run over one parameter axis")
    sweep_p.add_argument("config", type=Path)
    sweep_p.add_argument("--axis", required=True)
    sweep_p.add_argument("--values", required=True, type=_parse_values, help="comma-separated values")
    sweep_p.add_argument("--out", type=Path, default=None)

    check_p = sub.add_parser("check", help="run a property suite")
    check_p.add_argument("suite")

    report_p = sub.add_parser("report", help="summarize run directories")
    report_p.add_argument("directory", type=Path)
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    from nsfg.harness.runner import run
    from nsfg.harness.schema import load_config

    result = run(load_config(args.config), args.out)
    if result.reason and result.exit_code != EXIT_OK:
        print(f"run failed: {result.reason}", file=sys.stderr)
    return result.exit_code


def _cmd_sweep(args: argparse.Namespace) -> int:
    from nsfg.harness.schema import load_config
    from nsfg.harness.sweep import sweep

    config = load_config(args.config)
    directory = args.out or Path(settings.output_root) / f"sweep_{args.axis}"
    result = sweep(config, args.axis, args.values, directory)
    for name, slope in result.slopes.items():
        print(f"{name:>14}  slope {slope:.4f}")
    return result.exit_code


def _cmd_check(args: argparse.Namespace) -> int:
    from nsfg.harness.checks import run_suite

    results = run_suite(args.suite)
    for result in results:
        print(json.dumps(result.model_dump()))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def _cmd_report(args: argparse.Namespace) -> int:
    from nsfg.harness.report import render_report

    print(render_report(args.directory))
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "check": _cmd_check, "report": _cmd_report}


def main(argv: Optional[Sequence[str]] = None) -> int:
    get_logger("nsfg")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UnknownSuiteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NSFGError as exc:
        logger.error("Command failed", extra={"command": args.command}, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
