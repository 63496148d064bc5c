from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from pydantic import Field

from .base import FrozenModel
from .schema import AttributeSchema

# Căn theo vị trí với AttributeSchema.
MetadataVector = Tuple[float, ...]


class ResourceNode(FrozenModel):
    id: str
    metadata: MetadataVector
    weight: float


class TaskEdge(FrozenModel):
    id: str
    requirement: MetadataVector
    k: int = 1
    members: Optional[FrozenSet[str]] = None


class Hypergraph(FrozenModel):
    schema_: AttributeSchema = Field(alias="schema")
    nodes: Tuple[ResourceNode, ...] = ()
    edges: Tuple[TaskEdge, ...] = ()

    model_config = {"frozen": True, "extra": "forbid", "populate_by_name": True}

    @property
    def schema(self) -> AttributeSchema:
        return self.schema_

    def node_index(self) -> Dict[str, ResourceNode]:
        return {n.id: n for n in self.nodes}

    def candidates(self, e: TaskEdge) -> Tuple[ResourceNode, ...]:
        """Các thành viên của cạnh theo thứ tự nút đầu vào, hoặc mọi nút nếu cạnh không khai báo members."""
        if e.members is None:
            return self.nodes
        return tuple(n for n in self.nodes if n.id in e.members)

    def with_nodes(self, nodes: Sequence[ResourceNode]) -> "Hypergraph":
        return Hypergraph(schema=self.schema_, nodes=tuple(nodes), edges=self.edges)

    def with_edges(self, edges: Sequence[TaskEdge]) -> "Hypergraph":
        return Hypergraph(schema=self.schema_, nodes=self.nodes, edges=tuple(edges))
