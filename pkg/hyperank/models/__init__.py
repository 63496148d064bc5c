from .schema import Attribute, AttributeKind, AttributeSchema
from .hypergraph import Hypergraph, MetadataVector, ResourceNode, TaskEdge
from .metric import (
    CompositionMode,
    MatchFunctionId,
    MetricEntry,
    MetricSet,
    Operator,
    OperatorComposition,
    UnaryOperator,
)
from .ranking import ApproximationReport, BoundInfo, RankKey, RankResult, RelevanceScore
from .poset import DependencyDag, Ordering, SemanticEntity, SubsetOrdering
from .allocation import Allocation, AllocatorKind, Direction, FeasibilityRule
from .scheduling import Assignment, SchedTask, ScheduleResult, SchedulerKind
from .tables import LexicalVector, RankedEntity, SchemaEntity
from .validation import Violation
from .bench import AttributeDistribution, DistributionKind, GeneratorSpec, OutputFormat, RunConfig

__all__ = [
    "Attribute",
    "AttributeKind",
    "AttributeSchema",
    "Hypergraph",
    "MetadataVector",
    "ResourceNode",
    "TaskEdge",
    "CompositionMode",
    "MatchFunctionId",
    "MetricEntry",
    "MetricSet",
    "Operator",
    "OperatorComposition",
    "UnaryOperator",
    "ApproximationReport",
    "BoundInfo",
    "RankKey",
    "RankResult",
    "RelevanceScore",
    "DependencyDag",
    "Ordering",
    "SemanticEntity",
    "SubsetOrdering",
    "Allocation",
    "AllocatorKind",
    "Direction",
    "FeasibilityRule",
    "Assignment",
    "SchedTask",
    "ScheduleResult",
    "SchedulerKind",
    "LexicalVector",
    "RankedEntity",
    "SchemaEntity",
    "Violation",
    "AttributeDistribution",
    "DistributionKind",
    "GeneratorSpec",
    "OutputFormat",
    "RunConfig",
]
