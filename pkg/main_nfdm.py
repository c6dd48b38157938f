import argparse
import logging
import os
import sys
import time

from nfdmsim.config import apply_overrides, configure_logging, load_system_config, read_config, set_log_context
from nfdmsim.errors import ConfigError
from nfdmsim.simulation import demo_causality, run_experiment

logger = logging.getLogger(__name__)

TESTS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tests")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfdmsim",
        description="NFDM fiber link simulator: forward-NFT and decision-feedback BNFT detection sweeps",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    run = sub.add_parser("run", help="power / burst-length sweep, writes results.csv and optimum.csv")
    run.add_argument("config", nargs="?", default=None, help="JSON profile (default: packaged desk-scale profile)")
    run.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    run.add_argument("--out", default="results")

    demo = sub.add_parser("causality-demo", help="8- vs 6-symbol BNFT waveforms, writes causality.csv")
    demo.add_argument("config", nargs="?", default=None)
    demo.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    demo.add_argument("--out", default="results")

    selftest = sub.add_parser("selftest", help="run the test suite")
    selftest.add_argument("--slow", action="store_true", help="include the slow end-to-end checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    set_log_context(component="nfdm", mode=args.mode)
    logger.info("app.start", extra={"mode": args.mode})
    start_time = time.time()

    try:
        if args.mode == "run":
            out = run_experiment(args.config, args.overrides, args.out)
            print(out["optimum"].to_string(index=False))

        elif args.mode == "causality-demo":
            conf = apply_overrides(read_config(args.config), args.overrides)
            summary = demo_causality(load_system_config(conf), out_dir=args.out)
            print(f"max deviation after -t6:  {summary['deviation_after']:.3e}")
            print(f"max deviation before -t6: {summary['deviation_before']:.3e}")

        elif args.mode == "selftest":
            import pytest

            marker = [] if args.slow else ["-m", "not slow"]
            return int(pytest.main(["-q", *marker, TESTS_DIR]))

    except ConfigError as e:
        logger.error("app.config_error", extra={"diagnostics": e.diagnostics})
        for line in e.diagnostics:
            print(line, file=sys.stderr)
        return 2

    logger.info("app.done", extra={"mode": args.mode, "duration_s": round(time.time() - start_time, 2)})
    return 0


# -----------------------
# CLI entrypoint
# -----------------------
if __name__ == "__main__":

    run_id, listener = configure_logging()
    try:
        code = main()
    except Exception:
        logger.exception("app.crash")
        raise
    finally:
        listener.stop()
    sys.exit(code)
