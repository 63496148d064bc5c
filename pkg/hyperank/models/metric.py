import enum
from typing import Tuple, Union

from pydantic import Field, field_validator

from .base import FrozenModel


class MatchFunctionId(str, enum.Enum):
    RATIO_MINMAX = "ratio-minmax"
    SATURATING_RATIO = "saturating-ratio"
    LOG_RATIO = "log-ratio"
    BANDWIDTH_SHIFT = "bandwidth-shift"
    LATENCY_INVERSE = "latency-inverse"
    ABS_DIFF = "abs-diff"
    # Không thuộc các hàm so khớp đã công bố; dùng cho trường hợp suy biến và kiểm thử.
    EXACT_INDICATOR = "exact-indicator"
    IDENTITY = "identity"


class MetricEntry(FrozenModel):
    attribute: str = Field(..., min_length=1)
    function: MatchFunctionId
    mu: float = Field(default=1.0, ge=0, allow_inf_nan=False)

    @field_validator("function")
    @classmethod
    def _binary_only(cls, v: MatchFunctionId) -> MatchFunctionId:
        if v == MatchFunctionId.IDENTITY:
            raise ValueError("identity là toán tử kết hợp, không phải hàm so khớp")
        return v


class MetricSet(FrozenModel):
    """Họ toán tử: mỗi thuộc tính một hàm so khớp có trọng số."""

    name: str = "custom"
    entries: Tuple[MetricEntry, ...]

    @field_validator("entries")
    @classmethod
    def _check_entries(cls, entries: Tuple[MetricEntry, ...]) -> Tuple[MetricEntry, ...]:
        names = [e.attribute for e in entries]
        if len(set(names)) != len(names):
            raise ValueError("tên thuộc tính trong metric set không được trùng nhau")
        if not any(e.mu > 0 for e in entries):
            raise ValueError("metric set cần ít nhất một mục có mu > 0")
        return entries

    def scaled(self, factor: float) -> "MetricSet":
        return MetricSet(
            name=self.name,
            entries=tuple(e.model_copy(update={"mu": e.mu * factor}) for e in self.entries),
        )


class CompositionMode(str, enum.Enum):
    MEET = "meet"
    JOIN = "join"


class UnaryOperator(FrozenModel):
    """Hàm so khớp đã gắn giá trị của task, tức x -> f(x, task_value)."""

    function: MatchFunctionId
    task_value: float = 0.0


class OperatorComposition(FrozenModel):
    mode: CompositionMode
    left: Union[UnaryOperator, "OperatorComposition"]
    right: Union[UnaryOperator, "OperatorComposition"]


OperatorComposition.model_rebuild()

Operator = Union[UnaryOperator, OperatorComposition]
