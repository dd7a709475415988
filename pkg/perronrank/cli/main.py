"""
Command-line front door: ``python -m perronrank <subcommand> ...``.

Exit codes: 0 on success, 1 on domain errors (structured JSON on stderr),
2 on usage errors.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from perronrank.cli.commands import converge, fiber, lab, perturb, rank
from perronrank.core.config import settings
from perronrank.core.exceptions import PerronRankException, ValidationException
from perronrank.models.command import CommandSpec
from perronrank.models.response import ErrorResponse
from perronrank.utils.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2

COMMAND_MODULES = [rank, converge, perturb, fiber, lab]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Perron family ranking of pairwise comparison matrices",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.version}")
    parser.add_argument("--verbose", action="store_true", help="debug-level logs on standard error")
    parser.add_argument("--log-json", action="store_true", help="render logs as JSON lines")
    subparsers = parser.add_subparsers(dest="subcommand", metavar="<subcommand>", required=True)
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def command_spec(args: argparse.Namespace) -> CommandSpec:
    flags = {
        key: value for key, value in vars(args).items()
        if key not in ("handler", "subcommand", "input", "out", "config")
    }
    source = getattr(args, "input", None) or getattr(args, "config", None)
    target = getattr(args, "out", None)
    return CommandSpec(
        subcommand=args.subcommand,
        flags=flags,
        input_path=Path(source) if source else None,
        output_path=Path(target) if target else None,
    )


def _report(exc: PerronRankException) -> None:
    sys.stderr.write(ErrorResponse.from_exception(exc).model_dump_json() + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE_ERROR

    setup_logging(level="DEBUG" if args.verbose else None, json_output=True if args.log_json else None)
    spec = command_spec(args)
    logger.info("command parsed", **spec.model_dump(mode="json"))

    try:
        return args.handler(args)
    except ValidationException as e:
        logger.warning("invalid flags", **e.details)
        _report(e)
        return EXIT_USAGE_ERROR
    except PerronRankException as e:
        logger.error("command failed", subcommand=spec.subcommand, error_code=e.error_code)
        _report(e)
        return EXIT_DOMAIN_ERROR
    except ValidationError as e:
        logger.error("invalid domain value", subcommand=spec.subcommand)
        sys.stderr.write(ErrorResponse(
            error_code="INVALID_VALUE",
            message=str(e),
            details={"errors": e.errors(include_url=False, include_context=False, include_input=False)},
        ).model_dump_json() + "\n")
        return EXIT_DOMAIN_ERROR


def main() -> None:
    sys.exit(run())
