import json

import pytest

from hyperank.errors import ConfigurationError, UsageError
from hyperank.models import AllocatorKind, AttributeDistribution, AttributeKind, GeneratorSpec, RunConfig, SchedulerKind
from hyperank.repositories.instance_repo import load_instance
from hyperank.services.experiments import (
    _write_counterexample,
    run_allocation_experiment,
    run_bound_verification,
    run_scheduling_experiment,
)
from hyperank.schemas.result import BoundRow
from hyperank.services.generator import generate


def _strip_times(rows):
    return [r.model_dump(exclude={"wall_time_ns"}) for r in rows]


def test_allocation_rows_per_size_trial_allocator(appendix_metrics):
    cfg = RunConfig(seed=3, sizes=(30, 60), trials=2, k=3)
    rows = run_allocation_experiment(cfg, appendix_metrics, threads=1)

    assert len(rows) == 2 * 2 * len(AllocatorKind)
    keys = [(r.size, r.trial) for r in rows]
    assert keys == sorted(keys)
    assert [r.allocator for r in rows[: len(AllocatorKind)]] == [k.value for k in AllocatorKind]


def test_allocation_statuses_and_ratios(appendix_metrics):
    cfg = RunConfig(seed=11, sizes=(40,), trials=3, k=2)
    rows = run_allocation_experiment(cfg, appendix_metrics, threads=1)

    for r in rows:
        if r.allocator == "exhaustive":
            # 40 candidates is past the default exhaustive limit
            assert r.status == "skipped"
            continue
        assert r.status in ("ok", "short", "infeasible")
        if r.status == "ok":
            assert r.wall_time_ns >= 0
            assert r.total_cost > 0
        if r.allocator in ("hypergraph", "cheapest") and r.status == "ok":
            assert r.ratio_vs_cheapest >= 1.0 - 1e-12
        if r.allocator == "cheapest" and r.status == "ok":
            assert r.ratio_vs_cheapest == pytest.approx(1.0)
        if r.allocator == "hypergraph" and r.status == "ok":
            assert r.total_cost <= r.alpha_bound


def test_allocation_infeasible_rows_are_kept(appendix_metrics):
    spec = GeneratorSpec.allocation_default().model_copy(update={"requirement": (1000, 32, 2.0, 500, 10, 0)})
    cfg = RunConfig(seed=1, sizes=(10,), trials=1, k=2, generator=spec, allocators=("hypergraph", "cheapest"))
    rows = run_allocation_experiment(cfg, appendix_metrics, threads=1)
    hypergraph, cheapest = rows
    # no node is feasible: the ranking comes back empty, the exact solver refuses
    assert hypergraph.status == "short"
    assert hypergraph.total_cost == 0.0
    assert hypergraph.ratio_vs_cheapest is None
    assert cheapest.status == "infeasible"
    assert cheapest.total_cost is None


def test_allocation_independent_of_threads(appendix_metrics):
    cfg = RunConfig(seed=5, sizes=(20, 50), trials=3, k=2)
    single = run_allocation_experiment(cfg, appendix_metrics, threads=1)
    many = run_allocation_experiment(cfg, appendix_metrics, threads=4)
    assert _strip_times(single) == _strip_times(many)


def test_scheduling_rows(scheduling_metrics):
    cfg = RunConfig(seed=2, sizes=(10, 20), trials=2)
    rows = run_scheduling_experiment(cfg, scheduling_metrics, threads=1)

    assert len(rows) == 2 * 2 * len(SchedulerKind)
    assert {r.workload for r in rows} == {"reference"}
    assert all(r.tasks == 3 for r in rows)
    ok = [r for r in rows if r.status == "ok"]
    assert all(r.total_cost > 0 for r in ok)


def test_scheduling_generated_workload(scheduling_metrics):
    cfg = RunConfig(seed=2, sizes=(15,), trials=1, generated_tasks=4, schedulers=("hypergraph", "rr"))
    rows = run_scheduling_experiment(cfg, scheduling_metrics, threads=1)
    assert [(r.workload, r.scheduler) for r in rows] == [
        ("reference", "hypergraph"),
        ("reference", "rr"),
        ("generated", "hypergraph"),
        ("generated", "rr"),
    ]
    assert rows[-1].tasks == 4


def test_single_vm_pool(scheduling_metrics):
    cfg = RunConfig(seed=9, sizes=(1,), trials=1, schedulers=("rr",))
    rows = run_scheduling_experiment(cfg, scheduling_metrics, threads=1)
    assert len(rows) == 1
    assert rows[0].status == "ok"


def test_exclusive_with_too_few_vms_is_recorded(scheduling_metrics):
    cfg = RunConfig(seed=9, sizes=(2,), trials=1, schedulers=("hypergraph",), exclusive=True)
    rows = run_scheduling_experiment(cfg, scheduling_metrics, threads=1)
    assert rows[0].status == "infeasible"


def test_bound_verification_small(appendix_metrics, tmp_path):
    cfg = RunConfig(seed=7, trials=40)
    rows = run_bound_verification(cfg, appendix_metrics, threads=1, counterexample_dir=str(tmp_path))

    assert [r.trial for r in rows] == list(range(40))
    for r in rows:
        assert 1 <= r.n <= cfg.max_bound_n
        assert 1 <= r.k <= min(cfg.max_bound_k, r.n)
        assert r.status in ("ok", "infeasible")
        if r.status == "ok":
            assert r.within_bound
            assert r.ratio >= 1.0
            assert r.alg_cost <= r.alpha_bound
    assert any(r.status == "ok" for r in rows)
    assert list(tmp_path.iterdir()) == []


def test_bound_limit_is_enforced(appendix_metrics):
    with pytest.raises(UsageError):
        run_bound_verification(RunConfig(max_bound_n=40), appendix_metrics)


def test_counterexample_artifact_loads_back(tmp_path):
    h = generate(GeneratorSpec.allocation_default(), 4, seed=1, k=2)
    row = BoundRow(trial=3, n=4, k=2, status="violation", ratio=9.0, within_bound=False)
    path = _write_counterexample(str(tmp_path / "ce"), 3, h, row)

    doc = json.loads(open(path, "rb").read())
    assert doc["violation"]["trial"] == 3
    assert load_instance(json.dumps(doc["instance"]).encode()) == h


def test_bad_generator_requirement_is_rejected(appendix_metrics):
    spec = GeneratorSpec(
        attributes=(
            AttributeDistribution(name="lat", kind=AttributeKind.LATENCY_LIKE, low=1, high=3),
            AttributeDistribution(name="cost", kind=AttributeKind.COST, low=1, high=2),
        ),
        requirement=(0, 0),
    )
    cfg = RunConfig(seed=1, sizes=(5,), trials=1, k=1, generator=spec)
    with pytest.raises(ConfigurationError):
        run_allocation_experiment(cfg, appendix_metrics, threads=1)
