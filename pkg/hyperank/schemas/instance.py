from typing import List, Optional

from pydantic import BaseModel, Field

from ..models.schema import AttributeKind


class AttributeDoc(BaseModel):
    name: str
    unit: str = ""
    kind: AttributeKind = AttributeKind.CAPACITY


class NodeDoc(BaseModel):
    id: str
    metadata: List[float]
    # Mặc định lấy theo thuộc tính cost khi bỏ trống.
    weight: Optional[float] = None


class EdgeDoc(BaseModel):
    id: str
    requirement: List[float]
    k: int = 1
    members: Optional[List[str]] = None


class InstanceDoc(BaseModel):
    schema_: List[AttributeDoc] = Field(..., alias="schema")
    nodes: List[NodeDoc] = Field(default_factory=list)
    edges: List[EdgeDoc] = Field(default_factory=list)

    model_config = {"extra": "forbid", "populate_by_name": True}


class TaskDoc(BaseModel):
    id: str = Field(..., min_length=1)
    cpu_cores: float = Field(..., gt=0)
    ram_gib: float = Field(..., gt=0)
    exec_seconds: float = Field(..., gt=0)
    arrival_index: Optional[int] = Field(None, ge=0)

    model_config = {"extra": "forbid"}


class SchemaEntityDoc(BaseModel):
    table: str = Field(..., min_length=1)
    column: str = Field(..., min_length=1)
    context: Optional[str] = None

    model_config = {"extra": "forbid"}
