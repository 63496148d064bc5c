import enum
from typing import Tuple

from .base import FrozenModel


class AllocatorKind(str, enum.Enum):
    HYPERGRAPH = "hypergraph"
    EXHAUSTIVE = "exhaustive"
    CHEAPEST = "cheapest"
    RANDOM = "random"
    GREEDY = "greedy"


class Allocation(FrozenModel):
    allocator: AllocatorKind
    selected: Tuple[str, ...]
    total_cost: float
    short_selection: bool = False


class Direction(str, enum.Enum):
    AT_LEAST = "at-least"
    AT_MOST = "at-most"
    IGNORED = "ignored"


class FeasibilityRule(FrozenModel):
    """Phép so sánh theo từng thuộc tính mà nút phải thỏa so với yêu cầu."""

    attributes: Tuple[str, ...]
    directions: Tuple[Direction, ...]
