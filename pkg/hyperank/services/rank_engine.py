import logging
import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import List, Optional, Sequence

from ..config import settings
from ..errors import ConfigurationError, DegenerateInstanceError, UsageError
from ..models.hypergraph import Hypergraph, TaskEdge
from ..models.metric import MetricSet
from ..models.ranking import ApproximationReport, BoundInfo, RankKey, RankResult, RelevanceScore
from .feasibility import feasible_nodes, rule_for
from .metric_ops import resolve, tensor_terms
from .parallel import parallel_map

logger = logging.getLogger(__name__)


@dataclass
class OpStats:
    """Bộ đếm thao tác, được điền khi truyền vào rank hoặc scheduler."""

    comparisons: int = 0
    operations: int = 0


def score_all(
    h: Hypergraph,
    e: TaskEdge,
    m: MetricSet,
    key: RankKey = RankKey.UPSILON,
    threads: Optional[int] = None,
    feasible_only: bool = False,
) -> List[RelevanceScore]:
    """Mỗi ứng viên một điểm, theo thứ tự nút đầu vào."""
    if len(e.requirement) != len(h.schema):
        raise ConfigurationError(
            f"yêu cầu của cạnh {e.id!r} có {len(e.requirement)} giá trị, schema có {len(h.schema)} thuộc tính"
        )
    resolved = resolve(m, h.schema)
    candidates = h.candidates(e)
    if feasible_only:
        candidates = feasible_nodes(rule_for(h.schema), candidates, e.requirement)

    eps = settings.epsilon_weight
    requirement = e.requirement

    def score(v) -> RelevanceScore:
        total, envelope = tensor_terms(resolved, v.metadata, requirement)
        return RelevanceScore(
            node_id=v.id,
            edge_id=e.id,
            tensor=total,
            upsilon=total / max(v.weight, eps),
            weight=v.weight,
            envelope=envelope,
            key=key,
            zero_weight=v.weight == 0,
        )

    scores = parallel_map(score, candidates, threads)
    zero = [s.node_id for s in scores if s.zero_weight]
    if zero:
        logger.warning("edge %s: %d zero-weight node(s) scored with epsilon weight", e.id, len(zero))
    logger.debug("edge %s: scored %d candidate(s) by %s", e.id, len(scores), key.value)
    return scores


def _order_key(s: RelevanceScore):
    return (-s.value, s.weight, s.node_id)


def _compare(a: RelevanceScore, b: RelevanceScore) -> int:
    ka, kb = _order_key(a), _order_key(b)
    return (ka > kb) - (ka < kb)


def rank(
    scores: Sequence[RelevanceScore],
    k: int,
    edge_id: Optional[str] = None,
    stats: Optional[OpStats] = None,
) -> RankResult:
    """Sắp theo key giảm dần, weight tăng dần, id nút tăng dần rồi lấy k phần tử đầu."""
    if k < 1:
        raise UsageError(f"k phải ≥ 1, nhận được {k}")

    if stats is None:
        ranked = sorted(scores, key=_order_key)
    else:
        def counted(a: RelevanceScore, b: RelevanceScore) -> int:
            stats.comparisons += 1
            return _compare(a, b)

        ranked = sorted(scores, key=cmp_to_key(counted))

    selected = ranked[:k]
    key = scores[0].key if scores else RankKey.UPSILON
    bound = None
    if selected:
        M = max(s.envelope for s in selected)
        bound = BoundInfo(
            M=M,
            k=k,
            alpha_bound=k * M,
            upsilon_at_most_one=sum(1 for s in selected if s.upsilon <= 1),
            zero_weight_nodes=tuple(s.node_id for s in selected if s.zero_weight),
        )

    if edge_id is None:
        edge_id = scores[0].edge_id if scores else ""
    return RankResult(
        edge_id=edge_id,
        k=k,
        key=key,
        ranked=tuple(ranked),
        selected=tuple(s.node_id for s in selected),
        total_cost=math.fsum(s.weight for s in selected),
        bound=bound,
        short_selection=k > len(ranked),
    )


def allocate(
    h: Hypergraph,
    m: MetricSet,
    key: RankKey = RankKey.UPSILON,
    threads: Optional[int] = None,
    feasible_only: bool = False,
) -> List[RankResult]:
    """Top-k cho từng cạnh; các cạnh độc lập và có thể dùng chung nút."""
    results = []
    for e in h.edges:
        result = rank(score_all(h, e, m, key, threads, feasible_only), e.k, edge_id=e.id)
        if result.short_selection:
            logger.warning("edge %s: only %d candidate(s) for k=%d", e.id, len(result.selected), e.k)
        results.append(result)
    return results


def approximation_report(r: RankResult, optimal_cost: float, m_bound: float) -> ApproximationReport:
    if not optimal_cost > 0:
        raise DegenerateInstanceError(
            f"chi phí tối ưu {optimal_cost!r} làm tỉ số xấp xỉ không xác định",
            {"edge_id": r.edge_id},
        )
    ratio = r.total_cost / optimal_cost
    alpha_bound = r.k * m_bound * optimal_cost
    return ApproximationReport(ratio=ratio, alpha_bound=alpha_bound, within_bound=ratio <= alpha_bound)
