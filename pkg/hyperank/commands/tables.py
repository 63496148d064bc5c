import argparse

from ..models.bench import OutputFormat
from ..models.tables import RankedEntity
from ..repositories.task_repo import TableSchemaRepository
from ..services.table_select import rank_entities
from .common import add_output_args, write_rows


def register(subparsers) -> None:
    parser = subparsers.add_parser("tables", help="rank schema columns by similarity to a question")
    parser.add_argument("--schema", required=True, help="schema entities (JSON)")
    parser.add_argument("--question", required=True)
    parser.add_argument("--k", type=int, help="keep the top k entities")
    add_output_args(parser, default=OutputFormat.JSON)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    entities = TableSchemaRepository(args.schema).list()
    write_rows(args, rank_entities(args.question, entities, args.k), RankedEntity)
    return 0
