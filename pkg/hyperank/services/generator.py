import logging
from typing import Optional, Tuple

import numpy as np

from ..errors import ConfigurationError, UsageError
from ..models.bench import AttributeDistribution, DistributionKind, GeneratorSpec
from ..models.hypergraph import Hypergraph, ResourceNode, TaskEdge
from ..models.schema import Attribute, AttributeKind, AttributeSchema
from ..models.scheduling import SchedTask
from .validation import check_vector, describe

logger = logging.getLogger(__name__)

# Khoảng giá trị cho workload lập lịch sinh ngẫu nhiên: (cpu cores, RAM GiB, giây thực thi).
TASK_RANGES = {"cpu_cores": (1.0, 16.0), "ram_gib": (1.0, 32.0), "exec_seconds": (1.0, 10.0)}


def derive_seed(master: int, *keys: int) -> int:
    """Seed con 64-bit; chỉ phụ thuộc vào (master, keys)."""
    state = np.random.SeedSequence(entropy=master, spawn_key=tuple(keys)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def stream(seed: int, index: int) -> np.random.Generator:
    """Luồng PCG64 riêng cho phần tử `index`; giá trị rút ra không phụ thuộc thứ tự chạy của thread."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def _check_distribution(d: AttributeDistribution) -> None:
    if d.distribution == DistributionKind.UNIFORM:
        if d.low is None or d.high is None:
            raise ConfigurationError(f"thuộc tính {d.name!r}: uniform cần low và high")
        if not d.low < d.high:
            raise ConfigurationError(f"thuộc tính {d.name!r}: low {d.low} phải < high {d.high}")
        smallest = d.low
    else:
        if not d.choices:
            raise ConfigurationError(f"thuộc tính {d.name!r}: choice cần danh sách choices không rỗng")
        smallest = min(d.choices)

    if d.kind == AttributeKind.LATENCY_LIKE and smallest <= 0:
        raise ConfigurationError(f"thuộc tính {d.name!r}: giá trị latency-like phải > 0")
    if smallest < 0:
        raise ConfigurationError(f"thuộc tính {d.name!r}: giá trị phải ≥ 0")


def validate_spec(spec: GeneratorSpec) -> None:
    names = [d.name for d in spec.attributes]
    if not names:
        raise ConfigurationError("generator không có thuộc tính nào")
    if len(set(names)) != len(names):
        raise ConfigurationError(f"tên thuộc tính của generator bị trùng: {names}")
    if sum(1 for d in spec.attributes if d.kind == AttributeKind.COST) > 1:
        raise ConfigurationError("generator khai báo nhiều hơn một thuộc tính cost")
    if len(spec.requirement) != len(spec.attributes):
        raise ConfigurationError(
            f"requirement có {len(spec.requirement)} giá trị cho {len(spec.attributes)} thuộc tính"
        )
    for d in spec.attributes:
        _check_distribution(d)

    report = check_vector(schema_of(spec), tuple(float(x) for x in spec.requirement), "requirement")
    if report:
        raise ConfigurationError(f"requirement: {describe(report)}", [v.model_dump() for v in report])


def schema_of(spec: GeneratorSpec) -> AttributeSchema:
    return AttributeSchema(
        attributes=tuple(Attribute(name=d.name, unit=d.unit, kind=d.kind) for d in spec.attributes)
    )


def _draw(rng: np.random.Generator, d: AttributeDistribution) -> float:
    if d.distribution == DistributionKind.UNIFORM:
        return float(rng.uniform(d.low, d.high))
    return float(d.choices[int(rng.integers(len(d.choices)))])


def generate(spec: GeneratorSpec, n: int, seed: int, k: Optional[int] = None, edge_id: str = "t1") -> Hypergraph:
    """n nút có id n1..n{n} cùng một cạnh truy vấn không khai báo members.

    Weight lấy theo thuộc tính cost, hoặc 1.0 nếu schema không có.
    """
    if n < 1:
        raise UsageError(f"n phải ≥ 1, nhận được {n}")
    validate_spec(spec)
    schema = schema_of(spec)
    cost_index = schema.cost_index

    nodes = []
    for i in range(n):
        rng = stream(seed, i)
        metadata = tuple(_draw(rng, d) for d in spec.attributes)
        weight = metadata[cost_index] if cost_index is not None else 1.0
        nodes.append(ResourceNode(id=f"n{i + 1}", metadata=metadata, weight=weight))

    edge = TaskEdge(id=edge_id, requirement=tuple(float(x) for x in spec.requirement), k=k or spec.k)
    logger.debug("generated %d node(s) with seed %d", n, seed)
    return Hypergraph(schema=schema, nodes=tuple(nodes), edges=(edge,))


def generate_tasks(n: int, seed: int) -> Tuple[SchedTask, ...]:
    """n task lập lịch, đến theo thứ tự chỉ số."""
    if n < 0:
        raise UsageError(f"n phải ≥ 0, nhận được {n}")
    tasks = []
    for i in range(n):
        rng = stream(seed, i)
        drawn = {name: float(rng.uniform(low, high)) for name, (low, high) in TASK_RANGES.items()}
        tasks.append(SchedTask(id=f"g{i + 1}", arrival_index=i, **drawn))
    return tuple(tasks)
