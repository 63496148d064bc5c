from typing import List, Optional, Sequence

from ..models.allocation import Direction, FeasibilityRule
from ..models.hypergraph import MetadataVector, ResourceNode
from ..models.schema import AttributeKind, AttributeSchema

_DIRECTIONS = {
    AttributeKind.CAPACITY: Direction.AT_LEAST,
    AttributeKind.LATENCY_LIKE: Direction.AT_MOST,
    AttributeKind.COST: Direction.IGNORED,
}


def rule_for(schema: AttributeSchema) -> FeasibilityRule:
    return FeasibilityRule(
        attributes=schema.names,
        directions=tuple(_DIRECTIONS[a.kind] for a in schema.attributes),
    )


def violations(rule: FeasibilityRule, node: ResourceNode, requirement: MetadataVector) -> List[int]:
    """Chỉ số các thuộc tính mà nút không đáp ứng yêu cầu."""
    missed = []
    for i, direction in enumerate(rule.directions):
        have, need = node.metadata[i], requirement[i]
        if direction == Direction.AT_LEAST and have < need:
            missed.append(i)
        elif direction == Direction.AT_MOST and have > need:
            missed.append(i)
    return missed


def is_feasible(rule: FeasibilityRule, node: ResourceNode, requirement: MetadataVector) -> bool:
    return not violations(rule, node, requirement)


def feasible_nodes(
    rule: FeasibilityRule, nodes: Sequence[ResourceNode], requirement: MetadataVector
) -> List[ResourceNode]:
    return [n for n in nodes if is_feasible(rule, n, requirement)]


def binding_attribute(
    rule: FeasibilityRule, nodes: Sequence[ResourceNode], requirement: MetadataVector
) -> Optional[str]:
    """Thuộc tính loại nhiều ứng viên nhất (hòa thì lấy thuộc tính đứng trước trong schema)."""
    counts = [0] * len(rule.attributes)
    for node in nodes:
        for i in violations(rule, node, requirement):
            counts[i] += 1
    if not any(counts):
        return None
    best = max(range(len(counts)), key=lambda i: (counts[i], -i))
    return rule.attributes[best]
