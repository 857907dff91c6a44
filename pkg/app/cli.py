"""
pisquared command-line entry point.
"""

import argparse
import logging
import shlex
import sys
from typing import List, Optional, Sequence

from app.commands import COMMANDS, derive
from app.core.config import get_cached_settings
from app.core.errors import classify
from app.utils.arguments import attach_negative_values
from hypergeo.errors import VerificationError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pisquared",
        description="Verify quadratic transformations and Ramanujan-type series for 1/pi^2",
    )
    ap.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    subparsers = ap.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return ap


def configure_logging(level: str, fmt: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        format=fmt,
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    argv = attach_negative_values(argv, derive.NEGATIVE_VALUE_FLAGS)
    args = build_parser().parse_args(argv)
    args.command_line = shlex.join(argv)

    settings = get_cached_settings()
    configure_logging("DEBUG" if args.verbose or settings.debug else settings.log_level, settings.log_format)
    logger.debug("%s v%s: %s", settings.app_name, settings.app_version, args.command_line)

    try:
        return args.handler(args, settings)
    except VerificationError as exc:
        exit_code, code = classify(exc)
        logger.warning("%s failed with %s: %s", args.command, code, exc)
        print(f"error [{code}]: {exc}", file=sys.stderr)
        return exit_code
