import enum
from typing import Optional, Tuple

from .base import FrozenModel


class RankKey(str, enum.Enum):
    UPSILON = "upsilon"
    TENSOR = "tensor"


class RelevanceScore(FrozenModel):
    node_id: str
    edge_id: str
    tensor: float
    upsilon: float
    weight: float
    # Σ μᵢ·|fᵢ| của nút này, thành phần theo nút của M.
    envelope: float
    key: RankKey = RankKey.UPSILON
    zero_weight: bool = False

    @property
    def value(self) -> float:
        return self.upsilon if self.key == RankKey.UPSILON else self.tensor


class BoundInfo(FrozenModel):
    M: float
    k: int
    # k·M; nhân với C*(e) để có cận tuyệt đối.
    alpha_bound: float
    upsilon_at_most_one: int = 0
    zero_weight_nodes: Tuple[str, ...] = ()


class RankResult(FrozenModel):
    edge_id: str
    k: int
    key: RankKey
    ranked: Tuple[RelevanceScore, ...]
    selected: Tuple[str, ...]
    total_cost: float
    bound: Optional[BoundInfo] = None
    short_selection: bool = False


class ApproximationReport(FrozenModel):
    ratio: float
    alpha_bound: float
    within_bound: bool
