import math
from typing import List, Sequence

from ..models.hypergraph import Hypergraph, MetadataVector
from ..models.schema import AttributeKind, AttributeSchema
from ..models.validation import Violation


def validate(h: Hypergraph) -> List[Violation]:
    """Kiểm tra mọi ràng buộc cấu trúc; vi phạm được trả về, không raise."""
    report: List[Violation] = []
    report.extend(_check_schema(h.schema))

    seen_nodes = set()
    cost_index = h.schema.cost_index
    for node in h.nodes:
        path = f"nodes[{node.id}]"
        if not node.id:
            report.append(Violation(path=path, message="id của nút không được để trống"))
        if node.id in seen_nodes:
            report.append(Violation(path=path, message=f"id nút bị trùng {node.id!r}"))
        seen_nodes.add(node.id)
        report.extend(check_vector(h.schema, node.metadata, f"{path}.metadata"))

        if not math.isfinite(node.weight) or node.weight < 0:
            report.append(Violation(path=f"{path}.weight", message="weight phải hữu hạn và không âm"))
        elif (
            cost_index is not None
            and len(node.metadata) == len(h.schema)
            and node.metadata[cost_index] != node.weight
        ):
            report.append(
                Violation(
                    path=f"{path}.weight",
                    message=f"weight {node.weight!r} khác thuộc tính cost {node.metadata[cost_index]!r}",
                )
            )

    seen_edges = set()
    for edge in h.edges:
        path = f"edges[{edge.id}]"
        if not edge.id:
            report.append(Violation(path=path, message="id của cạnh không được để trống"))
        if edge.id in seen_edges:
            report.append(Violation(path=path, message=f"id cạnh bị trùng {edge.id!r}"))
        seen_edges.add(edge.id)
        report.extend(check_vector(h.schema, edge.requirement, f"{path}.requirement"))

        if edge.k < 1:
            report.append(Violation(path=f"{path}.k", message="k phải ≥ 1"))
        if edge.members is not None:
            for member in sorted(edge.members):
                if member not in seen_nodes:
                    report.append(
                        Violation(path=f"{path}.members[{member}]", message=f"không tìm thấy nút có id {member!r}")
                    )
            if edge.k > len(edge.members):
                report.append(
                    Violation(
                        path=f"{path}.k",
                        message=f"k={edge.k} vượt quá {len(edge.members)} thành viên của cạnh",
                    )
                )
    return report


def _check_schema(schema: AttributeSchema) -> List[Violation]:
    report: List[Violation] = []
    seen = set()
    for i, attr in enumerate(schema.attributes):
        path = f"schema[{attr.name or i}]"
        if not attr.name:
            report.append(Violation(path=path, message="tên thuộc tính không được để trống"))
        elif attr.name in seen:
            report.append(Violation(path=path, message=f"tên thuộc tính bị trùng {attr.name!r}"))
        seen.add(attr.name)

    costs = [a.name for a in schema.attributes if a.kind == AttributeKind.COST]
    if len(costs) > 1:
        report.append(
            Violation(path="schema", message=f"chỉ được có tối đa một thuộc tính cost, tìm thấy {', '.join(costs)}")
        )
    return report


def check_vector(schema: AttributeSchema, values: MetadataVector, path: str) -> List[Violation]:
    if len(values) != len(schema):
        return [
            Violation(path=path, message=f"cần {len(schema)} giá trị, nhận được {len(values)}")
        ]

    report: List[Violation] = []
    for attr, value in zip(schema.attributes, values):
        where = f"{path}.{attr.name}"
        if not math.isfinite(value):
            report.append(Violation(path=where, message=f"giá trị {value!r} không hữu hạn"))
        elif attr.kind == AttributeKind.LATENCY_LIKE and value <= 0:
            report.append(Violation(path=where, message=f"giá trị latency-like {value!r} phải > 0"))
        elif attr.kind != AttributeKind.LATENCY_LIKE and value < 0:
            report.append(Violation(path=where, message=f"giá trị {attr.kind.value} {value!r} phải ≥ 0"))
    return report


def is_valid(h: Hypergraph) -> bool:
    return not validate(h)


def describe(report: Sequence[Violation]) -> str:
    return "\n".join(f"{v.path}: {v.message}" for v in report)
