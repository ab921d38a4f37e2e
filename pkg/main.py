import argparse
import logging
import sys
from typing import List, Optional

import config
from errors import MatchingError
from handlers import analyze, bench, history, match, verify
from handlers.common import EXIT_USAGE

logging.basicConfig(
    level=config.LOG_LEVEL,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mvmatch', description="Maximum cardinality matching in general graphs")
    subparsers = parser.add_subparsers(dest='command', required=True)
    for module in (match, analyze, verify, bench, history):
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (MatchingError, ValueError) as e:
        logger.error(f"[main] {args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"[main] {args.command}: cannot read input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)
