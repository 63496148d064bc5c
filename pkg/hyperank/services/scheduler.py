import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

from ..config import settings
from ..errors import ConfigurationError, InfeasibleError, UsageError
from ..models.hypergraph import Hypergraph, ResourceNode, TaskEdge
from ..models.metric import MetricSet
from ..models.ranking import RankKey
from ..models.schema import Attribute, AttributeKind, AttributeSchema
from ..models.scheduling import Assignment, SchedTask, ScheduleResult, SchedulerKind
from .feasibility import is_feasible, rule_for
from .metric_ops import resolve, tensor_terms
from .rank_engine import OpStats, rank, score_all

logger = logging.getLogger(__name__)

SCHEDULING_SCHEMA = AttributeSchema(
    attributes=(
        Attribute(name="cpu", unit="cores", kind=AttributeKind.CAPACITY),
        Attribute(name="ram", unit="GiB", kind=AttributeKind.CAPACITY),
        Attribute(name="exec_time", unit="s", kind=AttributeKind.LATENCY_LIKE),
        Attribute(name="cost", unit="units", kind=AttributeKind.COST),
    )
)

_TASK_FIELDS = {"cpu": "cpu_cores", "ram": "ram_gib", "exec_time": "exec_seconds"}

REFERENCE_TASKS: Tuple[SchedTask, ...] = (
    SchedTask(id="task1", cpu_cores=8, ram_gib=16, exec_seconds=5, arrival_index=0),
    SchedTask(id="task2", cpu_cores=4, ram_gib=8, exec_seconds=10, arrival_index=1),
    SchedTask(id="task3", cpu_cores=16, ram_gib=32, exec_seconds=2, arrival_index=2),
)


def task_edge(task: SchedTask, schema: AttributeSchema, members: Optional[Iterable[str]] = None) -> TaskEdge:
    """Biểu diễn task như một siêu cạnh k=1 trên schema của VM."""
    requirement = []
    for attr in schema.attributes:
        if attr.kind == AttributeKind.COST:
            requirement.append(0.0)
        elif attr.name in _TASK_FIELDS:
            requirement.append(float(getattr(task, _TASK_FIELDS[attr.name])))
        else:
            raise ConfigurationError(
                f"thuộc tính VM {attr.name!r} không có trường tương ứng ở task; cần một trong {sorted(_TASK_FIELDS)}"
            )
    return TaskEdge(
        id=task.id,
        requirement=tuple(requirement),
        k=1,
        members=frozenset(members) if members is not None else None,
    )


def _check_pool(vms: Hypergraph) -> None:
    if not vms.nodes:
        raise UsageError("danh sách VM đang trống")


def _result(kind: SchedulerKind, assignments: List[Assignment]) -> ScheduleResult:
    return ScheduleResult(
        scheduler=kind,
        assignments=tuple(assignments),
        total_cost=math.fsum(a.cost for a in assignments),
    )


def _pair_score(
    vms: Hypergraph, task: SchedTask, vm: ResourceNode, m: Optional[MetricSet], key: RankKey
) -> Optional[float]:
    if m is None:
        return None
    total, _ = tensor_terms(resolve(m, vms.schema), vm.metadata, task_edge(task, vms.schema).requirement)
    if key == RankKey.TENSOR:
        return total
    return total / max(vm.weight, settings.epsilon_weight)


def schedule_hypergraph(
    tasks: Sequence[SchedTask],
    vms: Hypergraph,
    m: MetricSet,
    exclusive: bool = False,
    feasible_only: bool = False,
    key: RankKey = RankKey.UPSILON,
    stats: Optional[OpStats] = None,
    threads: Optional[int] = None,
) -> ScheduleResult:
    """Mỗi task chọn VM phù hợp nhất theo độ liên quan; task được xử lý theo thứ tự đầu vào."""
    _check_pool(vms)
    missing = set(_TASK_FIELDS) - {e.attribute for e in m.entries}
    if missing:
        raise ConfigurationError(f"metric set {m.name!r} không bao phủ {sorted(missing)}")
    if exclusive and len(tasks) > len(vms.nodes):
        raise InfeasibleError(
            f"chế độ exclusive: có {len(tasks)} task nhưng chỉ có {len(vms.nodes)} VM",
            {"tasks": len(tasks), "vms": len(vms.nodes)},
        )

    available = {v.id for v in vms.nodes}
    assignments = []
    for task in tasks:
        edge = task_edge(task, vms.schema, available if exclusive else None)
        scores = score_all(vms, edge, m, key, threads, feasible_only)
        if not scores:
            raise InfeasibleError(f"task {task.id!r}: không có VM khả thi", {"task_id": task.id})
        best = rank(scores, 1, edge_id=task.id, stats=stats).ranked[0]
        assignments.append(Assignment(task_id=task.id, node_id=best.node_id, score=best.value, cost=best.weight))
        if exclusive:
            available.discard(best.node_id)
    return _result(SchedulerKind.HYPERGRAPH, assignments)


def schedule_round_robin(
    tasks: Sequence[SchedTask],
    vms: Hypergraph,
    m: Optional[MetricSet] = None,
    key: RankKey = RankKey.UPSILON,
    stats: Optional[OpStats] = None,
) -> ScheduleResult:
    """Task i được gán cho VM i mod |vms| theo thứ tự trong pool."""
    _check_pool(vms)
    assignments = []
    for i, task in enumerate(tasks):
        vm = vms.nodes[i % len(vms.nodes)]
        if stats is not None:
            stats.operations += 1
        assignments.append(
            Assignment(task_id=task.id, node_id=vm.id, score=_pair_score(vms, task, vm, m, key), cost=vm.weight)
        )
    return _result(SchedulerKind.ROUND_ROBIN, assignments)


def _first_fit(
    kind: SchedulerKind,
    ordered: Sequence[SchedTask],
    vms: Hypergraph,
    exclusive: bool,
    m: Optional[MetricSet],
    key: RankKey,
    stats: Optional[OpStats],
) -> ScheduleResult:
    _check_pool(vms)
    rule = rule_for(vms.schema)
    used = set()
    assignments = []
    for task in ordered:
        requirement = task_edge(task, vms.schema).requirement
        chosen = None
        for vm in vms.nodes:
            if stats is not None:
                stats.operations += 1
            if exclusive and vm.id in used:
                continue
            if is_feasible(rule, vm, requirement):
                chosen = vm
                break
        if chosen is None:
            raise InfeasibleError(f"task {task.id!r}: không có VM khả thi", {"task_id": task.id, "scheduler": kind.value})
        used.add(chosen.id)
        assignments.append(
            Assignment(
                task_id=task.id, node_id=chosen.id, score=_pair_score(vms, task, chosen, m, key), cost=chosen.weight
            )
        )
    return _result(kind, assignments)


def schedule_fcfs(
    tasks: Sequence[SchedTask],
    vms: Hypergraph,
    exclusive: bool = False,
    m: Optional[MetricSet] = None,
    key: RankKey = RankKey.UPSILON,
    stats: Optional[OpStats] = None,
) -> ScheduleResult:
    """Theo thứ tự đến; mỗi task lấy VM khả thi đầu tiên trong pool."""
    ordered = [t for _, t in sorted(enumerate(tasks), key=lambda p: (p[1].arrival_index, p[0]))]
    return _first_fit(SchedulerKind.FCFS, ordered, vms, exclusive, m, key, stats)


def schedule_sjf(
    tasks: Sequence[SchedTask],
    vms: Hypergraph,
    exclusive: bool = False,
    m: Optional[MetricSet] = None,
    key: RankKey = RankKey.UPSILON,
    stats: Optional[OpStats] = None,
) -> ScheduleResult:
    """Task chạy ngắn nhất trước (hòa thì theo thứ tự đến), sau đó first fit."""
    ordered = [
        t for _, t in sorted(enumerate(tasks), key=lambda p: (p[1].exec_seconds, p[1].arrival_index, p[0]))
    ]
    return _first_fit(SchedulerKind.SJF, ordered, vms, exclusive, m, key, stats)


def schedule(
    kind: SchedulerKind,
    tasks: Sequence[SchedTask],
    vms: Hypergraph,
    m: MetricSet,
    exclusive: bool = False,
    key: RankKey = RankKey.UPSILON,
    threads: Optional[int] = None,
) -> ScheduleResult:
    if kind == SchedulerKind.HYPERGRAPH:
        return schedule_hypergraph(tasks, vms, m, exclusive=exclusive, key=key, threads=threads)
    if kind == SchedulerKind.ROUND_ROBIN:
        return schedule_round_robin(tasks, vms, m=m, key=key)
    if kind == SchedulerKind.FCFS:
        return schedule_fcfs(tasks, vms, exclusive=exclusive, m=m, key=key)
    return schedule_sjf(tasks, vms, exclusive=exclusive, m=m, key=key)
