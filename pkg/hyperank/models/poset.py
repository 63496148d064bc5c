import enum
from typing import FrozenSet, Tuple

from .base import FrozenModel


class Ordering(str, enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"


class SubsetOrdering(str, enum.Enum):
    LESS_OR_EQUAL = "less-or-equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class SemanticEntity(FrozenModel):
    node_id: str
    edge_id: str
    operator_id: str

    @property
    def label(self) -> str:
        return f"{self.node_id}@{self.edge_id}#{self.operator_id}"

    @property
    def sort_key(self) -> Tuple[str, str, str]:
        return (self.node_id, self.edge_id, self.operator_id)


class DependencyDag(FrozenModel):
    vertices: Tuple[SemanticEntity, ...] = ()
    arcs: FrozenSet[Tuple[int, int]] = frozenset()
