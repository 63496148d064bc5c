from .instance import AttributeDoc, EdgeDoc, InstanceDoc, NodeDoc, SchemaEntityDoc, TaskDoc
from .result import (
    AllocationRow,
    AssignmentOut,
    BoundOut,
    BoundRow,
    RankedNodeOut,
    RankResultOut,
    RankSummaryRow,
    SchedulingRow,
)

__all__ = [
    "AttributeDoc",
    "NodeDoc",
    "EdgeDoc",
    "InstanceDoc",
    "TaskDoc",
    "SchemaEntityDoc",
    "AllocationRow",
    "SchedulingRow",
    "BoundRow",
    "RankedNodeOut",
    "BoundOut",
    "RankResultOut",
    "RankSummaryRow",
    "AssignmentOut",
]
