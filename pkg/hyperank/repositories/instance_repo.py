import logging
from typing import List, Optional

from pydantic import ValidationError

from ..errors import InstanceValidationError, ParseError
from ..models.hypergraph import Hypergraph, ResourceNode, TaskEdge
from ..models.schema import Attribute, AttributeSchema
from ..schemas.instance import InstanceDoc
from ..services.validation import validate
from .base import describe_errors, dump_json, field_errors, parse_json, read_file, write_file

logger = logging.getLogger(__name__)


def _to_hypergraph(doc: InstanceDoc) -> Hypergraph:
    schema = AttributeSchema(
        attributes=tuple(Attribute(name=a.name, unit=a.unit, kind=a.kind) for a in doc.schema_)
    )
    cost_index = schema.cost_index

    nodes: List[ResourceNode] = []
    for i, n in enumerate(doc.nodes):
        weight = n.weight
        if weight is None:
            if cost_index is None:
                raise ParseError(f"nodes[{i}].weight: bắt buộc khi schema không có thuộc tính cost")
            if cost_index >= len(n.metadata):
                raise ParseError(f"nodes[{i}].metadata: quá ngắn, không có giá trị cho thuộc tính cost")
            weight = n.metadata[cost_index]
        nodes.append(ResourceNode(id=n.id, metadata=tuple(n.metadata), weight=weight))

    edges = tuple(
        TaskEdge(
            id=e.id,
            requirement=tuple(e.requirement),
            k=e.k,
            members=frozenset(e.members) if e.members is not None else None,
        )
        for e in doc.edges
    )
    return Hypergraph(schema=schema, nodes=tuple(nodes), edges=edges)


def load_instance(data: bytes) -> Hypergraph:
    """Đọc và kiểm tra tài liệu instance."""
    raw = parse_json(data, "instance")
    try:
        doc = InstanceDoc.model_validate(raw)
    except ValidationError as exc:
        raise ParseError(f"instance: {describe_errors(exc)}", field_errors(exc)) from None

    h = _to_hypergraph(doc)
    report = validate(h)
    if report:
        raise InstanceValidationError(report)
    return h


def instance_doc(h: Hypergraph) -> dict:
    return {
        "schema": [{"name": a.name, "unit": a.unit, "kind": a.kind.value} for a in h.schema.attributes],
        "nodes": [{"id": n.id, "metadata": list(n.metadata), "weight": n.weight} for n in h.nodes],
        "edges": [
            {
                "id": e.id,
                "requirement": list(e.requirement),
                "k": e.k,
                "members": sorted(e.members) if e.members is not None else None,
            }
            for e in h.edges
        ],
    }


def save_instance(h: Hypergraph) -> bytes:
    """Dạng chuẩn: khóa được sắp xếp, UTF-8, số nguyên không có phần thập phân."""
    return dump_json(instance_doc(h))


def canonicalize(data: bytes) -> bytes:
    return dump_json(parse_json(data, "instance"))


class InstanceRepository:
    def __init__(self, path: str):
        self.path = path

    def load(self) -> Hypergraph:
        """Đọc instance từ file."""
        h = load_instance(read_file(self.path))
        logger.info("loaded %s: %d node(s), %d edge(s)", self.path, len(h.nodes), len(h.edges))
        return h

    def save(self, h: Hypergraph) -> None:
        """Ghi instance ra file ở dạng chuẩn."""
        write_file(self.path, save_instance(h))

    def save_counterexample(self, h: Hypergraph, details: Optional[dict] = None) -> None:
        """Ghi phản ví dụ: instance kèm thông tin vi phạm."""
        doc = instance_doc(h)
        if details is not None:
            doc = {"instance": doc, "violation": details}
        write_file(self.path, dump_json(doc))
