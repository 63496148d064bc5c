import itertools
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..errors import InfeasibleError, UsageError
from ..models.allocation import Allocation, AllocatorKind
from ..models.hypergraph import Hypergraph, ResourceNode, TaskEdge
from ..models.metric import MetricSet
from ..models.ranking import RankKey
from .feasibility import binding_attribute, feasible_nodes, rule_for
from .rank_engine import rank, score_all

logger = logging.getLogger(__name__)


def _cost(nodes: Sequence[ResourceNode]) -> float:
    return math.fsum(n.weight for n in nodes)


def _feasible_or_raise(h: Hypergraph, e: TaskEdge, k: int) -> List[ResourceNode]:
    if k < 1:
        raise UsageError(f"k phải ≥ 1, nhận được {k}")
    candidates = h.candidates(e)
    if k > len(candidates):
        raise InfeasibleError(
            f"cạnh {e.id!r}: k={k} vượt quá {len(candidates)} ứng viên",
            {"edge_id": e.id, "k": k, "candidates": len(candidates)},
        )
    rule = rule_for(h.schema)
    feasible = feasible_nodes(rule, candidates, e.requirement)
    if len(feasible) < k:
        attribute = binding_attribute(rule, candidates, e.requirement)
        raise InfeasibleError(
            f"cạnh {e.id!r}: chỉ có {len(feasible)} nút khả thi cho k={k}; thuộc tính ràng buộc {attribute!r}",
            {"edge_id": e.id, "k": k, "feasible": len(feasible), "binding_attribute": attribute},
        )
    return feasible


def optimal_exhaustive(h: Hypergraph, e: TaskEdge, k: int) -> Allocation:
    """Tổng weight nhỏ nhất trên mọi tập con k phần tử khả thi (lời giải chính xác)."""
    n = len(h.candidates(e))
    if n > settings.exhaustive_limit:
        raise UsageError(
            f"vét cạn trên {n} ứng viên vượt quá giới hạn {settings.exhaustive_limit}"
        )
    feasible = sorted(_feasible_or_raise(h, e, k), key=lambda v: v.id)

    best: Optional[Tuple[float, Tuple[str, ...]]] = None
    for subset in itertools.combinations(feasible, k):
        cost = _cost(subset)
        ids = tuple(v.id for v in subset)
        if best is None or (cost, ids) < best:
            best = (cost, ids)

    cost, ids = best
    return Allocation(allocator=AllocatorKind.EXHAUSTIVE, selected=ids, total_cost=cost)


def optimal_cheapest_feasible(h: Hypergraph, e: TaskEdge, k: int) -> Allocation:
    """k nút khả thi có weight thấp nhất; chính xác vì hàm mục tiêu tách được theo từng nút."""
    feasible = _feasible_or_raise(h, e, k)
    chosen = sorted(feasible, key=lambda v: (v.weight, v.id))[:k]
    return Allocation(
        allocator=AllocatorKind.CHEAPEST,
        selected=tuple(v.id for v in chosen),
        total_cost=_cost(chosen),
    )


def random_allocation(h: Hypergraph, e: TaskEdge, k: int, seed: int) -> Allocation:
    candidates = h.candidates(e)
    if k > len(candidates):
        raise InfeasibleError(
            f"cạnh {e.id!r}: không thể lấy mẫu {k} trong {len(candidates)} ứng viên",
            {"edge_id": e.id, "k": k, "candidates": len(candidates)},
        )
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(candidates), size=k, replace=False)
    chosen = [candidates[int(i)] for i in picks]
    return Allocation(
        allocator=AllocatorKind.RANDOM,
        selected=tuple(v.id for v in chosen),
        total_cost=_cost(chosen),
    )


def greedy_by_weight(h: Hypergraph, e: TaskEdge, k: int) -> Allocation:
    """k ứng viên rẻ nhất, bỏ qua tính khả thi và độ phù hợp."""
    candidates = h.candidates(e)
    chosen = sorted(candidates, key=lambda v: (v.weight, v.id))[:k]
    return Allocation(
        allocator=AllocatorKind.GREEDY,
        selected=tuple(v.id for v in chosen),
        total_cost=_cost(chosen),
        short_selection=k > len(candidates),
    )


def run_allocator(
    kind: AllocatorKind,
    h: Hypergraph,
    e: TaskEdge,
    k: int,
    m: Optional[MetricSet] = None,
    seed: int = 0,
    key: RankKey = RankKey.UPSILON,
    threads: Optional[int] = None,
) -> Allocation:
    """Điểm vào chung cho bộ chạy thực nghiệm và CLI."""
    if kind == AllocatorKind.EXHAUSTIVE:
        return optimal_exhaustive(h, e, k)
    if kind == AllocatorKind.CHEAPEST:
        return optimal_cheapest_feasible(h, e, k)
    if kind == AllocatorKind.RANDOM:
        return random_allocation(h, e, k, seed)
    if kind == AllocatorKind.GREEDY:
        return greedy_by_weight(h, e, k)

    if m is None:
        raise UsageError("allocator hypergraph cần một metric set")
    result = rank(score_all(h, e, m, key, threads, feasible_only=True), k, edge_id=e.id)
    return Allocation(
        allocator=AllocatorKind.HYPERGRAPH,
        selected=result.selected,
        total_cost=result.total_cost,
        short_selection=result.short_selection,
    )
