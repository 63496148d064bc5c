import argparse
from typing import Optional, Sequence, Type

from pydantic import BaseModel

from ..models.bench import OutputFormat
from ..repositories.result_repo import ResultRepository, emit


def add_output_args(parser: argparse.ArgumentParser, default: Optional[OutputFormat] = OutputFormat.CSV) -> None:
    parser.add_argument("--out", help="output file (stdout when omitted)")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=default.value if default else None,
        help="output format",
    )


def add_threads_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, help="worker threads, 0 = auto (default: HYPERANK_THREADS)")


def csv_list(value: str) -> list:
    return [item.strip() for item in value.split(",") if item.strip()]


def write_rows(
    args: argparse.Namespace,
    rows: Sequence[BaseModel],
    row_type: Optional[Type[BaseModel]] = None,
    fmt: Optional[OutputFormat] = None,
    out: Optional[str] = None,
) -> None:
    fmt = OutputFormat(args.format) if args.format else (fmt or OutputFormat.CSV)
    ResultRepository(args.out or out).write(emit(rows, fmt, row_type))
