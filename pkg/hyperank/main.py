# hyperank/main.py
import argparse
import json
import logging
import sys
import traceback
from typing import List, Optional

from . import __version__
from .commands import COMMANDS
from .config import settings
from .errors import HyperankError, UsageError

logger = logging.getLogger(__name__)

OS_ERROR_EXIT = 3


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog=settings.app_name, description="Hypergraph resource ranking and allocation toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def _report(payload: dict) -> None:
    print(json.dumps(payload, ensure_ascii=False, default=str), file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=getattr(logging, settings.log_level, logging.INFO))

    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except HyperankError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        _report(exc.payload())
        return exc.exit_code
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        _report({"detail": str(exc)})
        return OS_ERROR_EXIT
    except Exception as exc:
        tb = traceback.format_exc()
        logging.exception("Unhandled exception: %s", exc)

        error_payload = {"detail": str(exc)}
        if settings.app_debug:
            error_payload["traceback"] = tb
        _report(error_payload)
        return 1
