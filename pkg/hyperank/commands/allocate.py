import argparse
import logging
from typing import List

from ..models.bench import OutputFormat
from ..models.ranking import RankKey, RankResult
from ..repositories.base import write_file
from ..repositories.config_repo import resolve_metrics
from ..repositories.instance_repo import InstanceRepository
from ..repositories.result_repo import ResultRepository, emit, emit_documents
from ..schemas.result import BoundOut, RankedNodeOut, RankResultOut, RankSummaryRow
from ..services.poset_dag import ScoringContext, build_dag, entities_for_edge, to_dot
from ..services.rank_engine import allocate
from .common import add_output_args, add_threads_arg

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("allocate", help="rank nodes and select the top k for every edge")
    parser.add_argument("--instance", required=True, help="instance document (JSON)")
    parser.add_argument("--metrics", default="appendix", help="metric preset name or metric-set file")
    parser.add_argument("--key", choices=[k.value for k in RankKey], default=RankKey.UPSILON.value)
    parser.add_argument(
        "--feasible-only", action="store_true", help="rank only nodes that satisfy the edge requirement"
    )
    parser.add_argument("--verbose", action="store_true", help="include the full ranked list of every edge")
    parser.add_argument("--dot", help="write the score dependency graph as DOT")
    add_output_args(parser, default=OutputFormat.JSON)
    add_threads_arg(parser)
    parser.set_defaults(handler=run)


def ranked_rows(result: RankResult) -> List[RankedNodeOut]:
    chosen = set(result.selected)
    return [
        RankedNodeOut(
            edge_id=result.edge_id,
            position=position,
            node_id=s.node_id,
            key=s.value,
            weight=s.weight,
            selected=s.node_id in chosen,
        )
        for position, s in enumerate(result.ranked, start=1)
    ]


def result_document(result: RankResult, verbose: bool = False) -> RankResultOut:
    bound = None
    if result.bound is not None:
        bound = BoundOut(
            M=result.bound.M,
            k=result.bound.k,
            alpha_bound=result.bound.alpha_bound,
            upsilon_at_most_one=result.bound.upsilon_at_most_one,
            zero_weight_nodes=list(result.bound.zero_weight_nodes),
        )
    return RankResultOut(
        edge_id=result.edge_id,
        k=result.k,
        key=result.key.value,
        selected=list(result.selected),
        total_cost=result.total_cost,
        short_selection=result.short_selection,
        bound=bound,
        ranked=ranked_rows(result) if verbose else None,
    )


def summary_row(result: RankResult) -> RankSummaryRow:
    bound = result.bound
    return RankSummaryRow(
        edge_id=result.edge_id,
        k=result.k,
        selected=" ".join(result.selected),
        total_cost=result.total_cost,
        short_selection=result.short_selection,
        M=bound.M if bound else None,
        alpha_bound=bound.alpha_bound if bound else None,
        upsilon_at_most_one=bound.upsilon_at_most_one if bound else None,
    )


def run(args: argparse.Namespace) -> int:
    h = InstanceRepository(args.instance).load()
    m = resolve_metrics(args.metrics)
    key = RankKey(args.key)
    results = allocate(h, m, key, args.threads, feasible_only=args.feasible_only)
    for result in results:
        logger.info("edge %s: selected %s (cost %s)", result.edge_id, ",".join(result.selected), result.total_cost)

    # JSON: một tài liệu cho mỗi cạnh; CSV: một dòng tóm tắt mỗi cạnh, hoặc từng nút khi --verbose
    if OutputFormat(args.format) == OutputFormat.JSON:
        data = emit_documents(
            [result_document(r, args.verbose) for r in results], exclude=None if args.verbose else {"ranked"}
        )
    elif args.verbose:
        data = emit([row for r in results for row in ranked_rows(r)], OutputFormat.CSV, RankedNodeOut)
    else:
        data = emit([summary_row(r) for r in results], OutputFormat.CSV, RankSummaryRow)
    ResultRepository(args.out).write(data)

    if args.dot:
        ctx = ScoringContext(h, {m.name: m}, key)
        entities = [t for e in h.edges for t in entities_for_edge(h, e, m.name)]
        dag = build_dag(entities, ctx, consecutive_only=True, threads=args.threads)
        write_file(args.dot, to_dot(dag).encode("utf-8"))
    return 0
