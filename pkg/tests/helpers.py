import math
import random
from pathlib import Path
from typing import Optional, Sequence

from hyperank.models import Attribute, AttributeKind, AttributeSchema, Hypergraph, ResourceNode, TaskEdge

DATA = Path(__file__).resolve().parent.parent / "data"

# Composite scores of the six reference nodes against node 1's metadata, unit weights.
APPENDIX_TENSORS = {
    "n1": 4.498004,
    "n2": 2.5630655,
    "n3": 4.446079,
    "n4": 1.418471,
    "n5": 3.532447,
    "n6": 4.579341,
}
# The same values as usually quoted, rounded less carefully.
QUOTED_TENSORS = {
    "n1": 4.498004,
    "n2": 2.563062,
    "n3": 4.446085,
    "n4": 1.418471,
    "n5": 3.532441,
    "n6": 4.579344,
}

APPENDIX_SCHEMA = AttributeSchema(
    attributes=(
        Attribute(name="cpu", unit="cores"),
        Attribute(name="ram", unit="GiB"),
        Attribute(name="storage", unit="TB"),
        Attribute(name="bandwidth", unit="Mbps"),
        Attribute(name="latency", unit="ms", kind=AttributeKind.LATENCY_LIKE),
        Attribute(name="cost", unit="units", kind=AttributeKind.COST),
    )
)


def oracle_tensor(node: Sequence[float], task: Sequence[float], mu: Sequence[float] = (1, 1, 1, 1, 1)) -> float:
    """Hand-written five-function score, independent of the registry."""
    cpu = min(node[0], task[0]) / max(node[0], task[0])
    ram = 1.0 if node[1] >= task[1] else node[1] / task[1]
    storage = math.log(1 + min(node[2], task[2])) / math.log(1 + max(node[2], task[2]))
    bandwidth = node[3] / (task[3] + 1)
    latency = 1.0 / (1.0 + node[4] / task[4])
    return sum(m * f for m, f in zip(mu, (cpu, ram, storage, bandwidth, latency)))


def node(node_id: str, values: Sequence[float], weight: Optional[float] = None) -> ResourceNode:
    values = tuple(float(v) for v in values)
    return ResourceNode(id=node_id, metadata=values, weight=values[-1] if weight is None else weight)


def random_values(rng: random.Random) -> tuple:
    return (
        rng.uniform(4, 64),
        rng.uniform(8, 128),
        rng.uniform(0.5, 8),
        rng.uniform(100, 1000),
        rng.uniform(2, 30),
        rng.uniform(50, 400),
    )


def random_instance(
    rng: random.Random,
    n: int,
    k: int = 1,
    requirement: Sequence[float] = (8, 16, 1.0, 200, 25, 0),
    members: Optional[Sequence[str]] = None,
) -> Hypergraph:
    nodes = tuple(node(f"v{i:02d}", random_values(rng)) for i in range(n))
    edge = TaskEdge(
        id="e",
        requirement=tuple(float(x) for x in requirement),
        k=k,
        members=frozenset(members) if members is not None else None,
    )
    return Hypergraph(schema=APPENDIX_SCHEMA, nodes=nodes, edges=(edge,))
