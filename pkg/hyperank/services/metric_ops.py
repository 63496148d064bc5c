import math
from typing import Callable, Dict, NamedTuple, Sequence, Tuple, Union

from ..errors import ConfigurationError, MatchDomainError, UsageError
from ..models.hypergraph import MetadataVector, ResourceNode, TaskEdge
from ..models.metric import (
    CompositionMode,
    MatchFunctionId,
    MetricEntry,
    MetricSet,
    Operator,
    OperatorComposition,
    UnaryOperator,
)
from ..models.schema import AttributeKind, AttributeSchema

MatchFn = Callable[[float, float], float]


def _ratio_minmax(node_value: float, task_value: float) -> float:
    lo, hi = min(node_value, task_value), max(node_value, task_value)
    if lo < 0 or hi <= 0:
        raise MatchDomainError(MatchFunctionId.RATIO_MINMAX.value, node_value, task_value)
    return lo / hi


def _saturating_ratio(node_value: float, task_value: float) -> float:
    if node_value < 0 or task_value < 0:
        raise MatchDomainError(MatchFunctionId.SATURATING_RATIO.value, node_value, task_value)
    return 1.0 if node_value >= task_value else node_value / task_value


def _log_ratio(node_value: float, task_value: float) -> float:
    if node_value <= 0 or task_value <= 0:
        raise MatchDomainError(MatchFunctionId.LOG_RATIO.value, node_value, task_value)
    return math.log(1 + min(node_value, task_value)) / math.log(1 + max(node_value, task_value))


def _bandwidth_shift(node_value: float, task_value: float) -> float:
    if node_value < 0 or task_value < 0:
        raise MatchDomainError(MatchFunctionId.BANDWIDTH_SHIFT.value, node_value, task_value)
    return node_value / (task_value + 1)


def _latency_inverse(node_value: float, task_value: float) -> float:
    if node_value < 0 or task_value <= 0:
        raise MatchDomainError(MatchFunctionId.LATENCY_INVERSE.value, node_value, task_value)
    return 1.0 / (1.0 + node_value / task_value)


def _negated_abs_diff(node_value: float, task_value: float) -> float:
    # đổi khoảng cách thành độ tương đồng: trong registry giá trị càng cao càng tốt
    return -abs(node_value - task_value)


def _exact_indicator(node_value: float, task_value: float) -> float:
    return 1.0 if node_value == task_value else 0.0


def _identity(node_value: float, task_value: float) -> float:
    return node_value


REGISTRY: Dict[MatchFunctionId, MatchFn] = {
    MatchFunctionId.RATIO_MINMAX: _ratio_minmax,
    MatchFunctionId.SATURATING_RATIO: _saturating_ratio,
    MatchFunctionId.LOG_RATIO: _log_ratio,
    MatchFunctionId.BANDWIDTH_SHIFT: _bandwidth_shift,
    MatchFunctionId.LATENCY_INVERSE: _latency_inverse,
    MatchFunctionId.ABS_DIFF: _negated_abs_diff,
    MatchFunctionId.EXACT_INDICATOR: _exact_indicator,
    MatchFunctionId.IDENTITY: _identity,
}


def match_score(f: Union[MatchFunctionId, str], node_value: float, task_value: float) -> float:
    """Giá trị dạng đóng của hàm so khớp; raise MatchDomainError khi nằm ngoài miền xác định."""
    function = MatchFunctionId(f)
    if not (math.isfinite(node_value) and math.isfinite(task_value)):
        raise MatchDomainError(function.value, node_value, task_value)
    value = REGISTRY[function](node_value, task_value)
    if not math.isfinite(value):
        raise MatchDomainError(function.value, node_value, task_value)
    return value


class ResolvedEntry(NamedTuple):
    index: int
    attribute: str
    function: MatchFunctionId
    mu: float


def resolve(m: MetricSet, schema: AttributeSchema) -> Tuple[ResolvedEntry, ...]:
    positions = schema.positions()
    resolved = []
    for entry in m.entries:
        index = positions.get(entry.attribute)
        if index is None:
            raise ConfigurationError(
                f"metric set {m.name!r} dùng thuộc tính {entry.attribute!r} không có trong schema",
                {"attribute": entry.attribute, "schema": list(schema.names)},
            )
        if schema.attributes[index].kind == AttributeKind.COST:
            raise ConfigurationError(
                f"thuộc tính cost {entry.attribute!r} không thể dùng làm chiều so khớp",
                {"attribute": entry.attribute},
            )
        resolved.append(ResolvedEntry(index, entry.attribute, entry.function, entry.mu))
    return tuple(resolved)


def weighted_terms(
    resolved: Sequence[ResolvedEntry], node_values: MetadataVector, task_values: MetadataVector
) -> Tuple[float, ...]:
    terms = []
    for entry in resolved:
        try:
            f = match_score(entry.function, node_values[entry.index], task_values[entry.index])
        except MatchDomainError as exc:
            raise exc.at(entry.attribute) from None
        terms.append(entry.mu * f)
    return tuple(terms)


def tensor_terms(
    resolved: Sequence[ResolvedEntry], node_values: MetadataVector, task_values: MetadataVector
) -> Tuple[float, float]:
    """(Σ μᵢfᵢ, Σ μᵢ|fᵢ|) cho một cặp nút/task."""
    terms = weighted_terms(resolved, node_values, task_values)
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def tensor(v: ResourceNode, e: TaskEdge, m: MetricSet, schema: AttributeSchema) -> float:
    """Điểm tổng hợp (v⊗e) = Σᵢ μᵢ·fᵢ(v.metadata[i], e.requirement[i])."""
    return tensor_terms(resolve(m, schema), v.metadata, e.requirement)[0]


def bound_M(
    e: TaskEdge, selected: Sequence[ResourceNode], m: MetricSet, schema: AttributeSchema
) -> float:
    if not selected:
        raise UsageError("bound_M cần một tập chọn không rỗng")
    resolved = resolve(m, schema)
    return max(tensor_terms(resolved, v.metadata, e.requirement)[1] for v in selected)


def identity() -> UnaryOperator:
    return UnaryOperator(function=MatchFunctionId.IDENTITY)


def bind(f: Union[MatchFunctionId, str], task_value: float) -> UnaryOperator:
    return UnaryOperator(function=MatchFunctionId(f), task_value=task_value)


def meet(left: Operator, right: Operator) -> OperatorComposition:
    return OperatorComposition(mode=CompositionMode.MEET, left=left, right=right)


def join(left: Operator, right: Operator) -> OperatorComposition:
    return OperatorComposition(mode=CompositionMode.JOIN, left=left, right=right)


def compose(c: Operator, x: float, path: str = "") -> float:
    """meet(f, g)(x) = f(g(x)); join(f, g)(x) = g(f(x))."""
    if isinstance(c, UnaryOperator):
        try:
            return match_score(c.function, x, c.task_value)
        except MatchDomainError as exc:
            raise exc.at(path or c.function.value) from None

    prefix = f"{path}." if path else ""
    if c.mode == CompositionMode.MEET:
        inner = compose(c.right, x, f"{prefix}{c.mode.value}.right")
        return compose(c.left, inner, f"{prefix}{c.mode.value}.left")
    inner = compose(c.left, x, f"{prefix}{c.mode.value}.left")
    return compose(c.right, inner, f"{prefix}{c.mode.value}.right")


APPENDIX_ATTRIBUTES = ("cpu", "ram", "storage", "bandwidth", "latency")

PRESETS: Dict[str, MetricSet] = {
    "appendix": MetricSet(
        name="appendix",
        entries=(
            MetricEntry(attribute="cpu", function=MatchFunctionId.RATIO_MINMAX),
            MetricEntry(attribute="ram", function=MatchFunctionId.SATURATING_RATIO),
            MetricEntry(attribute="storage", function=MatchFunctionId.LOG_RATIO),
            MetricEntry(attribute="bandwidth", function=MatchFunctionId.BANDWIDTH_SHIFT),
            MetricEntry(attribute="latency", function=MatchFunctionId.LATENCY_INVERSE),
        ),
    ),
    # exec_time dùng latency-inverse: thời gian chạy tương đối ngắn hơn được ưu tiên
    "scheduling": MetricSet(
        name="scheduling",
        entries=(
            MetricEntry(attribute="cpu", function=MatchFunctionId.RATIO_MINMAX),
            MetricEntry(attribute="ram", function=MatchFunctionId.SATURATING_RATIO),
            MetricEntry(attribute="exec_time", function=MatchFunctionId.LATENCY_INVERSE),
        ),
    ),
    "distance": MetricSet(
        name="distance",
        entries=tuple(MetricEntry(attribute=a, function=MatchFunctionId.ABS_DIFF) for a in APPENDIX_ATTRIBUTES),
    ),
}


def get_preset(name: str) -> MetricSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"không tìm thấy metric preset {name!r}; các preset có sẵn: {', '.join(sorted(PRESETS))}"
        ) from None
