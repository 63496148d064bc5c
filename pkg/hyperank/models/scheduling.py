import enum
from typing import Optional, Tuple

from pydantic import Field

from .base import FrozenModel


class SchedulerKind(str, enum.Enum):
    HYPERGRAPH = "hypergraph"
    ROUND_ROBIN = "rr"
    FCFS = "fcfs"
    SJF = "sjf"


class SchedTask(FrozenModel):
    id: str = Field(..., min_length=1)
    cpu_cores: float = Field(..., gt=0, allow_inf_nan=False)
    ram_gib: float = Field(..., gt=0, allow_inf_nan=False)
    exec_seconds: float = Field(..., gt=0, allow_inf_nan=False)
    arrival_index: int = Field(default=0, ge=0)


class Assignment(FrozenModel):
    task_id: str
    node_id: str
    score: Optional[float] = None
    cost: float = 0.0


class ScheduleResult(FrozenModel):
    scheduler: SchedulerKind
    assignments: Tuple[Assignment, ...] = ()
    total_cost: float = 0.0
