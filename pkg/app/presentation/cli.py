"""Command-line entry point: simulate / fit / summarize / benchmark / truth.

Logs go to stderr. Stdout carries exactly one JSON record per invocation:
``{"type": "complete", "command": ..., ...}`` or
``{"type": "error", "command": ..., "error_type": ..., "error": ...}``.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

from app.application.dto import RunConfig
from app.application.services import RunContext, RunOverrides
from app.application.use_cases.principal_strata import (
    BenchmarkUseCase,
    FitModelUseCase,
    SimulateDatasetUseCase,
    SummarizeUseCase,
    TruthUseCase,
)
from app.config import get_settings
from app.domain.exceptions import TwoStageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_DOMAIN_ERROR = 2
EXIT_INTERRUPTED = 130


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per use case."""
    parser = argparse.ArgumentParser(
        prog="twostage-ps",
        description="Bayesian principal stratification for two-stage randomized experiments",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run config (defaults if omitted)")
    common.add_argument("--seed", type=_nonnegative_int, help="master seed override")
    common.add_argument("--chains", type=_positive_int, help="number of chains override")
    common.add_argument("--out", type=Path, help="output directory override")
    common.add_argument("--workers", type=_positive_int, help="process pool size override")

    sub = parser.add_subparsers(dest="command", required=True)
    simulate = sub.add_parser("simulate", parents=[common], help="generate a synthetic dataset")
    simulate.add_argument("--shape", choices=["rsby"], help="field-study shaped dataset")
    fit = sub.add_parser("fit", parents=[common], help="fit the model to a CSV dataset")
    fit.add_argument("--data", type=Path, required=True, help="dataset CSV")
    summarize = sub.add_parser("summarize", parents=[common], help="summarize draw spools")
    summarize.add_argument("--input", type=Path, help="fit output directory (default --out)")
    sub.add_parser("benchmark", parents=[common], help="frequentist-property study")
    truth = sub.add_parser("truth", parents=[common], help="super-population truth table")
    truth.add_argument("--mode", choices=["published", "exact", "bruteforce"])
    return parser


def _use_case(args: argparse.Namespace, context: RunContext) -> Any:
    if args.command == "simulate":
        return SimulateDatasetUseCase(context, shape=args.shape)
    if args.command == "fit":
        return FitModelUseCase(context, args.data)
    if args.command == "summarize":
        return SummarizeUseCase(context, args.input)
    if args.command == "benchmark":
        return BenchmarkUseCase(context)
    return TruthUseCase(context, mode=args.mode)


def _emit(record: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    sys.stdout.flush()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        force=True,
    )
    try:
        config = RunConfig.from_file(args.config)
        context = RunContext.build(
            config,
            RunOverrides(
                seed=args.seed, chains=args.chains, output_dir=args.out, workers=args.workers
            ),
            settings,
        )
        logger.info(f"[CLI] {args.command}: seed={context.seed}, out={context.output_dir}")
        result = _use_case(args, context).execute()
    except TwoStageError as e:
        logger.error(f"[CLI] {args.command} failed: {e}")
        _emit({"type": "error", "command": args.command, **e.to_dict()})
        return EXIT_DOMAIN_ERROR
    except KeyboardInterrupt:
        logger.warning(f"[CLI] {args.command} interrupted; completed draws are on disk")
        _emit(
            {
                "type": "error",
                "command": args.command,
                "error_type": "Interrupted",
                "error": "interrupted",
            }
        )
        return EXIT_INTERRUPTED
    except Exception as e:
        logger.error(f"[CLI] {args.command} failed unexpectedly", exc_info=True)
        _emit(
            {
                "type": "error",
                "command": args.command,
                "error_type": type(e).__name__,
                "error": str(e),
            }
        )
        return EXIT_UNEXPECTED
    _emit({"type": "complete", "command": args.command, "seed": context.seed, **result})
    return EXIT_OK


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
