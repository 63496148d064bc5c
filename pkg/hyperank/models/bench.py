import enum
from typing import Optional, Tuple, Union

from pydantic import Field, field_validator

from .allocation import AllocatorKind
from .base import FrozenModel
from .metric import MetricSet
from .ranking import RankKey
from .schema import AttributeKind
from .scheduling import SchedulerKind


class DistributionKind(str, enum.Enum):
    UNIFORM = "uniform"
    CHOICE = "choice"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


class AttributeDistribution(FrozenModel):
    name: str
    unit: str = ""
    kind: AttributeKind = AttributeKind.CAPACITY
    distribution: DistributionKind = DistributionKind.UNIFORM
    low: Optional[float] = None
    high: Optional[float] = None
    choices: Optional[Tuple[float, ...]] = None


class GeneratorSpec(FrozenModel):
    attributes: Tuple[AttributeDistribution, ...]
    # Yêu cầu của cạnh truy vấn, căn theo `attributes`.
    requirement: Tuple[float, ...]
    k: int = Field(default=5, ge=1)

    @classmethod
    def allocation_default(cls) -> "GeneratorSpec":
        """Khoảng giá trị bao phủ fixture tham chiếu; task là task tham chiếu."""
        U = DistributionKind.UNIFORM
        return cls(
            attributes=(
                AttributeDistribution(name="cpu", unit="cores", distribution=U, low=4, high=64),
                AttributeDistribution(name="ram", unit="GiB", distribution=U, low=8, high=128),
                AttributeDistribution(name="storage", unit="TB", distribution=U, low=0.5, high=8),
                AttributeDistribution(name="bandwidth", unit="Mbps", distribution=U, low=100, high=1000),
                AttributeDistribution(
                    name="latency", unit="ms", kind=AttributeKind.LATENCY_LIKE, distribution=U, low=2, high=30
                ),
                AttributeDistribution(
                    name="cost", unit="units", kind=AttributeKind.COST, distribution=U, low=50, high=400
                ),
            ),
            requirement=(16, 32, 2.0, 500, 10, 0),
            k=5,
        )

    @classmethod
    def scheduling_default(cls) -> "GeneratorSpec":
        U = DistributionKind.UNIFORM
        return cls(
            attributes=(
                AttributeDistribution(name="cpu", unit="cores", distribution=U, low=2, high=64),
                AttributeDistribution(name="ram", unit="GiB", distribution=U, low=4, high=128),
                AttributeDistribution(
                    name="exec_time", unit="s", kind=AttributeKind.LATENCY_LIKE, distribution=U, low=1, high=8
                ),
                AttributeDistribution(
                    name="cost", unit="units", kind=AttributeKind.COST, distribution=U, low=50, high=400
                ),
            ),
            requirement=(1, 1, 8, 0),
            k=1,
        )


class RunConfig(FrozenModel):
    seed: int = Field(default=0, ge=0, lt=2**64)
    sizes: Tuple[int, ...] = (100, 500, 1000, 2000, 5000)
    trials: int = Field(default=1, ge=1)
    k: int = Field(default=5, ge=1)
    metrics: Union[str, MetricSet] = "appendix"
    sched_metrics: Union[str, MetricSet] = "scheduling"
    key: RankKey = RankKey.UPSILON
    allocators: Tuple[AllocatorKind, ...] = tuple(AllocatorKind)
    schedulers: Tuple[SchedulerKind, ...] = tuple(SchedulerKind)
    generator: Optional[GeneratorSpec] = None
    vm_generator: Optional[GeneratorSpec] = None
    # Số task sinh thêm mỗi lượt thử; 0 thì chỉ chạy ba task tham chiếu.
    generated_tasks: int = Field(default=0, ge=0)
    exclusive: bool = False
    max_bound_n: int = Field(default=15, ge=1)
    max_bound_k: int = Field(default=4, ge=1)
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV

    @field_validator("sizes")
    @classmethod
    def _sizes_non_empty(cls, sizes: Tuple[int, ...]) -> Tuple[int, ...]:
        if not sizes:
            raise ValueError("sizes không được để trống")
        if any(s < 1 for s in sizes):
            raise ValueError("sizes phải là số nút dương")
        return sizes
