import math
from typing import Optional, Tuple

from pydantic import Field, computed_field

from .base import FrozenModel


class SchemaEntity(FrozenModel):
    table: str = Field(..., min_length=1)
    column: str = Field(..., min_length=1)
    context: Optional[str] = None

    @computed_field
    @property
    def concat(self) -> str:
        text = f"{self.table}.{self.column}"
        if self.context:
            text = f"{text} {self.context}"
        return text


class RankedEntity(FrozenModel):
    entity: str
    score: float


class LexicalVector(FrozenModel):
    """Tần suất trigram đã băm (thưa), chuẩn hóa L2."""

    indices: Tuple[int, ...] = ()
    values: Tuple[float, ...] = ()

    @property
    def norm(self) -> float:
        return math.sqrt(math.fsum(v * v for v in self.values))

    def dot(self, other: "LexicalVector") -> float:
        theirs = dict(zip(other.indices, other.values))
        return math.fsum(v * theirs[i] for i, v in zip(self.indices, self.values) if i in theirs)
