import enum
from typing import Dict, Optional, Tuple

from .base import FrozenModel


class AttributeKind(str, enum.Enum):
    CAPACITY = "capacity"
    LATENCY_LIKE = "latency-like"
    COST = "cost"


class Attribute(FrozenModel):
    name: str
    unit: str = ""
    kind: AttributeKind = AttributeKind.CAPACITY


class AttributeSchema(FrozenModel):
    """Danh sách thuộc tính có thứ tự; mọi vector của instance đều đánh chỉ số theo nó."""

    attributes: Tuple[Attribute, ...] = ()

    def __len__(self) -> int:
        return len(self.attributes)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def positions(self) -> Dict[str, int]:
        return {a.name: i for i, a in enumerate(self.attributes)}

    @property
    def cost_index(self) -> Optional[int]:
        for i, a in enumerate(self.attributes):
            if a.kind == AttributeKind.COST:
                return i
        return None
