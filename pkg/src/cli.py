"""
cylresp: command-line front end.

    cylresp sweep      --config <path> [--out <path>] [--fine] [--workers N]
    cylresp resonances --config <path> [--out <path>] [--fine] [--workers N]
    cylresp verify     --config <path> [--freqs N]

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations
import argparse
import sys
from typing import List, Optional

from src.core.config import load_config_file
from src.core.errors import ConfigError, CylRespError, ParseError
from src.core.orchestrator import run_once
from src.utils.io import get_logger, load_settings

EXAMPLE_CONFIG = "config/steel_m1_sweep.cfg"
CONFIG_HELP = f"key=value configuration file, e.g. {EXAMPLE_CONFIG}"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

log = get_logger("cylresp")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylresp",
        description="Forced steady-state response of a simply-supported elastic cylinder.",
        epilog=f"example: cylresp sweep --config {EXAMPLE_CONFIG}  (BVP2, m = 1, k = 1 steel sweep, 10 Hz to 100 kHz)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("sweep", "stationary displacement at the configured point over the frequency grid"),
        ("resonances", "determinant sign changes over the grid for every configured k"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help=CONFIG_HELP)
        p.add_argument("--out", default=None, help="CSV output path (overrides `out` in the config; stdout when neither is set)")
        p.add_argument("--fine", action="store_true", help="use the fine frequency step (0.1 Hz by default)")
        p.add_argument("--workers", type=int, default=None, help="thread pool size for grid evaluation")

    v = sub.add_parser("verify", help="boundary, end-condition, elimination, PDE and ENBKS checks")
    v.add_argument("--config", required=True, help=CONFIG_HELP)
    v.add_argument("--freqs", type=int, default=20, help="number of frequencies sampled from the configured range")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings()
        cfg = load_config_file(args.config, settings["materials"])
        if getattr(args, "fine", False):
            cfg = cfg.with_step(settings["fine_step_hz"])
        if args.command == "sweep" and len(cfg.k_values) != 1:
            raise ConfigError(f"a sweep needs exactly one k, got {list(cfg.k_values)}", key="k")
        if args.command in ("sweep", "verify"):
            cfg.require_forced()
    except (ConfigError, ParseError) as e:
        log.error("configuration error: %s", e)
        print(f"cylresp: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "verify":
            state = run_once(cfg, "verify", settings=settings, extra={"verify_freqs": args.freqs})
            report = state["verification"]
            sys.stdout.write(state["text"])
            if not report.passed:
                log.error("verification failed")
                return EXIT_NUMERICAL
            return EXIT_OK

        state = run_once(cfg, args.command, settings=settings, out=args.out, workers=args.workers)
    except (ConfigError, ParseError) as e:
        log.error("configuration error: %s", e)
        print(f"cylresp: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        log.error("cannot write output: %s", e)
        print(f"cylresp: cannot write output: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CylRespError as e:
        log.error("numerical failure: %s", e)
        print(f"cylresp: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    if not state.get("outputs"):
        sys.stdout.write(state.get("text", ""))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
