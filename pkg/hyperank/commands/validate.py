import argparse

from ..repositories.instance_repo import InstanceRepository


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="check an instance document")
    parser.add_argument("--instance", required=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    # load() raise InstanceValidationError kèm toàn bộ báo cáo
    h = InstanceRepository(args.instance).load()
    print(f"ok: {len(h.nodes)} node(s), {len(h.edges)} edge(s), {len(h.schema)} attribute(s)")
    return 0
