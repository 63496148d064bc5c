import heapq
import itertools
import logging
from typing import AbstractSet, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

from ..config import settings
from ..errors import CycleError, EntityReferenceError, UsageError
from ..models.hypergraph import Hypergraph, TaskEdge
from ..models.metric import MetricSet
from ..models.poset import DependencyDag, Ordering, SemanticEntity, SubsetOrdering
from ..models.ranking import RankKey
from .metric_ops import ResolvedEntry, resolve, tensor_terms
from .parallel import parallel_map

logger = logging.getLogger(__name__)


class ScoringContext:
    """Phân giải các thực thể ngữ nghĩa theo hypergraph và bảng metric set đã đăng ký.

    Mỗi thực thể được tính khóa bằng toán tử của chính nó, nên các thực thể mang
    toán tử khác nhau vẫn so sánh được qua khóa số.
    """

    def __init__(
        self,
        h: Hypergraph,
        operators: Mapping[str, MetricSet],
        key: RankKey = RankKey.UPSILON,
        extra_edges: Sequence[TaskEdge] = (),
    ):
        self.h = h
        self.key = key
        self.operators = dict(operators)
        self._nodes = h.node_index()
        self._edges = {e.id: e for e in (*h.edges, *extra_edges)}
        self._resolved: Dict[str, Tuple[ResolvedEntry, ...]] = {}
        self._keys: Dict[SemanticEntity, float] = {}

    def _operator(self, operator_id: str) -> Tuple[ResolvedEntry, ...]:
        if operator_id not in self._resolved:
            m = self.operators.get(operator_id)
            if m is None:
                raise EntityReferenceError(f"không tìm thấy toán tử {operator_id!r}")
            self._resolved[operator_id] = resolve(m, self.h.schema)
        return self._resolved[operator_id]

    def _edge(self, edge_id: str) -> TaskEdge:
        edge = self._edges.get(edge_id)
        if edge is None:
            raise EntityReferenceError(f"không tìm thấy cạnh {edge_id!r}")
        return edge

    def key_of(self, t: SemanticEntity) -> float:
        cached = self._keys.get(t)
        if cached is not None:
            return cached
        node = self._nodes.get(t.node_id)
        if node is None:
            raise EntityReferenceError(f"không tìm thấy nút {t.node_id!r} trong thực thể {t.label}")
        edge = self._edge(t.edge_id)
        total, _ = tensor_terms(self._operator(t.operator_id), node.metadata, edge.requirement)
        value = total if self.key == RankKey.TENSOR else total / max(node.weight, settings.epsilon_weight)
        self._keys[t] = value
        return value

    def member_set(self, edge_id: str) -> FrozenSet[str]:
        edge = self._edge(edge_id)
        if edge.members is None:
            return frozenset(self._nodes)
        return edge.members


def entities_for_edge(h: Hypergraph, e: TaskEdge, operator_id: str) -> List[SemanticEntity]:
    return [SemanticEntity(node_id=v.id, edge_id=e.id, operator_id=operator_id) for v in h.candidates(e)]


def compare_score(t1: SemanticEntity, t2: SemanticEntity, ctx: ScoringContext) -> Ordering:
    k1, k2 = ctx.key_of(t1), ctx.key_of(t2)
    if k1 < k2:
        return Ordering.LESS
    if k1 > k2:
        return Ordering.GREATER
    return Ordering.EQUAL


def compare_subset(s1: AbstractSet[str], s2: AbstractSet[str]) -> SubsetOrdering:
    if s1 <= s2:
        return SubsetOrdering.LESS_OR_EQUAL
    if s2 <= s1:
        return SubsetOrdering.GREATER
    return SubsetOrdering.INCOMPARABLE


def build_dag(
    entities: Sequence[SemanticEntity],
    ctx: ScoringContext,
    consecutive_only: Optional[bool] = None,
    reduce: bool = False,
    threads: Optional[int] = None,
) -> DependencyDag:
    """Có cung (i, j) khi và chỉ khi key(i) < key(j); các khóa bằng nhau tạo thành antichain.

    Với `consecutive_only` chỉ giữ cung giữa các mức khóa liền kề,
    quan hệ khả đạt được giữ nguyên nên mọi thứ tự topo cũng vậy.
    """
    keys = parallel_map(ctx.key_of, entities, threads)
    n = len(entities)
    if consecutive_only is None:
        consecutive_only = n > settings.pairwise_dag_limit

    order = sorted(range(n), key=lambda i: keys[i])
    levels = [list(group) for _, group in itertools.groupby(order, key=lambda i: keys[i])]

    arcs: Set[Tuple[int, int]] = set()
    if consecutive_only:
        for lower, upper in zip(levels, levels[1:]):
            arcs.update((i, j) for i in lower for j in upper)
    else:
        for pos, lower in enumerate(levels):
            above = [j for level in levels[pos + 1 :] for j in level]
            arcs.update((i, j) for i in lower for j in above)

    logger.debug("built dag: %d vertices, %d arcs", n, len(arcs))
    dag = DependencyDag(vertices=tuple(entities), arcs=frozenset(arcs))
    return transitive_reduction(dag) if reduce else dag


def build_subset_dag(entities: Sequence[SemanticEntity], ctx: ScoringContext) -> DependencyDag:
    """Thứ tự bao hàm: có cung (i, j) khi siêu cạnh của thực thể i là tập con thực sự của thực thể j."""
    sets = [ctx.member_set(t.edge_id) for t in entities]
    arcs = {
        (i, j)
        for i, si in enumerate(sets)
        for j, sj in enumerate(sets)
        if i != j and si < sj
    }
    return DependencyDag(vertices=tuple(entities), arcs=frozenset(arcs))


def _adjacency(d: DependencyDag) -> Tuple[List[List[int]], List[int]]:
    n = len(d.vertices)
    succ: List[List[int]] = [[] for _ in range(n)]
    indegree = [0] * n
    for i, j in sorted(d.arcs):
        if not (0 <= i < n and 0 <= j < n):
            raise UsageError(f"cung ({i}, {j}) trỏ ra ngoài {n} đỉnh")
        succ[i].append(j)
        indegree[j] += 1
    return succ, indegree


def _find_cycle(succ: List[List[int]], remaining: Set[int]) -> List[int]:
    # Mọi đỉnh còn lại sau khi loại theo Kahn đều nằm trên hoặc dẫn tới một chu trình.
    color: Dict[int, int] = {}
    for start in sorted(remaining):
        if start in color:
            continue
        stack = [(start, iter(succ[start]))]
        path = [start]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            nxt = next((j for j in it if j in remaining), None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
                continue
            if color.get(nxt) == 1:
                return path[path.index(nxt) :] + [nxt]
            if nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return sorted(remaining)


def topo_rank(d: DependencyDag) -> List[int]:
    """Loại theo bậc vào của Kahn; các đỉnh sẵn sàng ra theo thứ tự id thực thể."""
    succ, indegree = _adjacency(d)
    vertices = d.vertices
    ready = [(vertices[i].sort_key, i) for i, deg in enumerate(indegree) if deg == 0]
    heapq.heapify(ready)

    order: List[int] = []
    while ready:
        _, i = heapq.heappop(ready)
        order.append(i)
        for j in succ[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(ready, (vertices[j].sort_key, j))

    if len(order) < len(vertices):
        remaining = set(range(len(vertices))) - set(order)
        raise CycleError(_find_cycle(succ, remaining))
    return order


def transitive_reduction(d: DependencyDag) -> DependencyDag:
    succ, _ = _adjacency(d)
    order = topo_rank(d)
    reach = [0] * len(d.vertices)
    for i in reversed(order):
        bits = 0
        for j in succ[i]:
            bits |= (1 << j) | reach[j]
        reach[i] = bits

    kept = set()
    for i, j in d.arcs:
        if not any(s != j and (reach[s] >> j) & 1 for s in succ[i]):
            kept.add((i, j))
    return DependencyDag(vertices=d.vertices, arcs=frozenset(kept))


def chain_extrema(
    entities: Sequence[SemanticEntity], ctx: ScoringContext
) -> Tuple[SemanticEntity, SemanticEntity]:
    """Infimum và supremum hữu hạn theo thứ tự điểm (hòa thì xét id thực thể)."""
    if not entities:
        raise UsageError("chain_extrema cần ít nhất một thực thể")
    ordered = sorted(entities, key=lambda t: (ctx.key_of(t), t.sort_key))
    return ordered[0], ordered[-1]


def to_dot(d: DependencyDag, name: str = "hyperank") -> str:
    lines = [f"digraph {name} {{"]
    for i, t in enumerate(d.vertices):
        label = t.label.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {i} [label="{label}"];')
    for i, j in sorted(d.arcs):
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
