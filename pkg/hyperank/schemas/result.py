from typing import List, Optional

from pydantic import BaseModel


class AllocationRow(BaseModel):
    size: int
    trial: int
    allocator: str
    # ok | short | infeasible | skipped
    status: str
    total_cost: Optional[float] = None
    ratio_vs_cheapest: Optional[float] = None
    alpha_bound: Optional[float] = None
    wall_time_ns: int = 0


class SchedulingRow(BaseModel):
    size: int
    trial: int
    workload: str
    scheduler: str
    status: str
    tasks: int = 0
    total_cost: Optional[float] = None
    wall_time_ns: int = 0


class BoundRow(BaseModel):
    trial: int
    n: int
    k: int
    status: str
    alg_cost: Optional[float] = None
    optimal_cost: Optional[float] = None
    ratio: Optional[float] = None
    M: Optional[float] = None
    alpha_bound: Optional[float] = None
    within_bound: Optional[bool] = None


class RankedNodeOut(BaseModel):
    edge_id: str
    position: int
    node_id: str
    key: float
    weight: float
    selected: bool


class AssignmentOut(BaseModel):
    scheduler: str
    task_id: str
    node_id: str
    score: Optional[float] = None
    cost: float


class BoundOut(BaseModel):
    M: float
    k: int
    alpha_bound: float
    upsilon_at_most_one: int = 0
    zero_weight_nodes: List[str] = []


class RankResultOut(BaseModel):
    edge_id: str
    k: int
    key: str
    selected: List[str]
    total_cost: float
    short_selection: bool
    bound: Optional[BoundOut] = None
    # Chỉ có khi chạy với --verbose
    ranked: Optional[List[RankedNodeOut]] = None


class RankSummaryRow(BaseModel):
    edge_id: str
    k: int
    # Danh sách id cách nhau bởi dấu cách, theo thứ tự xếp hạng
    selected: str
    total_cost: float
    short_selection: bool
    M: Optional[float] = None
    alpha_bound: Optional[float] = None
    upsilon_at_most_one: Optional[int] = None
