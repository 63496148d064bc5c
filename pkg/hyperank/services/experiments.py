import logging
import os
import time
from functools import partial
from typing import List, Optional, Tuple

import numpy as np

from ..config import settings
from ..errors import InfeasibleError, UsageError
from ..models.allocation import AllocatorKind
from ..models.bench import GeneratorSpec, RunConfig
from ..models.hypergraph import Hypergraph
from ..models.metric import MetricSet
from ..models.scheduling import SchedTask
from ..repositories.instance_repo import InstanceRepository
from ..schemas.result import AllocationRow, BoundRow, SchedulingRow
from .baselines import optimal_cheapest_feasible, optimal_exhaustive, run_allocator
from .generator import derive_seed, generate, generate_tasks, validate_spec
from .metric_ops import bound_M
from .parallel import run_all
from .rank_engine import approximation_report, rank, score_all
from .scheduler import REFERENCE_TASKS, schedule

logger = logging.getLogger(__name__)


def bound_default_spec() -> GeneratorSpec:
    """Cấu hình allocation mặc định với task nới lỏng hơn để phần lớn instance nhỏ vẫn khả thi."""
    spec = GeneratorSpec.allocation_default()
    return spec.model_copy(update={"requirement": (8, 16, 1.0, 200, 25, 0)})


def _timed(fn):
    start = time.perf_counter_ns()
    result = fn()
    return result, time.perf_counter_ns() - start


def _allocation_trial(
    cfg: RunConfig, spec: GeneratorSpec, m: MetricSet, size: int, trial: int
) -> List[AllocationRow]:
    seed = derive_seed(cfg.seed, size, trial)
    h = generate(spec, size, seed, k=cfg.k)
    e = h.edges[0]

    try:
        reference: Optional[float] = optimal_cheapest_feasible(h, e, cfg.k).total_cost
    except InfeasibleError:
        reference = None

    rows = []
    for kind in cfg.allocators:
        row = {"size": size, "trial": trial, "allocator": kind.value}
        run = partial(run_allocator, kind, h, e, cfg.k, m, derive_seed(seed, 1), cfg.key, 1)
        try:
            allocation, elapsed = _timed(run)
        except InfeasibleError:
            rows.append(AllocationRow(status="infeasible", **row))
            continue
        except UsageError as exc:
            logger.info("size %d trial %d: %s skipped (%s)", size, trial, kind.value, exc)
            rows.append(AllocationRow(status="skipped", **row))
            continue

        alpha_bound = None
        if kind == AllocatorKind.HYPERGRAPH and allocation.selected and reference:
            nodes = h.node_index()
            M = bound_M(e, [nodes[i] for i in allocation.selected], m, h.schema)
            alpha_bound = cfg.k * M * reference
        ratio = allocation.total_cost / reference if reference else None
        rows.append(
            AllocationRow(
                status="short" if allocation.short_selection else "ok",
                total_cost=allocation.total_cost,
                ratio_vs_cheapest=ratio,
                alpha_bound=alpha_bound,
                wall_time_ns=elapsed,
                **row,
            )
        )
    logger.info("allocation size %d trial %d: %d row(s)", size, trial, len(rows))
    return rows


def run_allocation_experiment(cfg: RunConfig, m: MetricSet, threads: Optional[int] = None) -> List[AllocationRow]:
    """Mỗi (size, trial, allocator) một dòng; các trial chạy song song, dòng trả về theo thứ tự khóa."""
    spec = cfg.generator or GeneratorSpec.allocation_default()
    validate_spec(spec)
    jobs = [partial(_allocation_trial, cfg, spec, m, size, trial) for size in cfg.sizes for trial in range(cfg.trials)]
    rows = [row for part in run_all(jobs, threads) for row in part]
    order = {kind.value: i for i, kind in enumerate(cfg.allocators)}
    return sorted(rows, key=lambda r: (r.size, r.trial, order[r.allocator]))


def _workloads(cfg: RunConfig, seed: int) -> List[Tuple[str, Tuple[SchedTask, ...]]]:
    workloads = [("reference", REFERENCE_TASKS)]
    if cfg.generated_tasks:
        workloads.append(("generated", generate_tasks(cfg.generated_tasks, derive_seed(seed, 2))))
    return workloads


def _scheduling_trial(
    cfg: RunConfig, spec: GeneratorSpec, m: MetricSet, size: int, trial: int
) -> List[SchedulingRow]:
    seed = derive_seed(cfg.seed, size, trial)
    vms = generate(spec, size, seed).with_edges(())

    rows = []
    for workload, tasks in _workloads(cfg, seed):
        for kind in cfg.schedulers:
            row = {"size": size, "trial": trial, "workload": workload, "scheduler": kind.value, "tasks": len(tasks)}
            run = partial(schedule, kind, tasks, vms, m, cfg.exclusive, cfg.key, 1)
            try:
                result, elapsed = _timed(run)
            except InfeasibleError:
                rows.append(SchedulingRow(status="infeasible", **row))
                continue
            rows.append(SchedulingRow(status="ok", total_cost=result.total_cost, wall_time_ns=elapsed, **row))
    return rows


def run_scheduling_experiment(cfg: RunConfig, m: MetricSet, threads: Optional[int] = None) -> List[SchedulingRow]:
    """Với mỗi (size, trial, workload, scheduler): tổng chi phí và thời gian chạy trên pool VM sinh ngẫu nhiên."""
    spec = cfg.vm_generator or GeneratorSpec.scheduling_default()
    validate_spec(spec)
    jobs = [
        partial(_scheduling_trial, cfg, spec, m, size, trial) for size in cfg.sizes for trial in range(cfg.trials)
    ]
    rows = [row for part in run_all(jobs, threads) for row in part]
    workloads = {"reference": 0, "generated": 1}
    order = {kind.value: i for i, kind in enumerate(cfg.schedulers)}
    return sorted(rows, key=lambda r: (r.size, r.trial, workloads[r.workload], order[r.scheduler]))


def _bound_trial(
    cfg: RunConfig, spec: GeneratorSpec, m: MetricSet, trial: int, counterexample_dir: Optional[str]
) -> BoundRow:
    rng = np.random.default_rng(derive_seed(cfg.seed, trial))
    n = int(rng.integers(1, cfg.max_bound_n + 1))
    k = int(rng.integers(1, min(cfg.max_bound_k, n) + 1))
    h = generate(spec, n, derive_seed(cfg.seed, trial, 1), k=k)
    e = h.edges[0]

    try:
        optimal = optimal_exhaustive(h, e, k).total_cost
    except InfeasibleError:
        return BoundRow(trial=trial, n=n, k=k, status="infeasible")

    result = rank(score_all(h, e, m, cfg.key, 1, feasible_only=True), k, edge_id=e.id)
    M = result.bound.M
    report = approximation_report(result, optimal, M)
    within = report.within_bound and report.ratio >= 1.0
    row = BoundRow(
        trial=trial,
        n=n,
        k=k,
        status="ok" if within else "violation",
        alg_cost=result.total_cost,
        optimal_cost=optimal,
        ratio=report.ratio,
        M=M,
        alpha_bound=report.alpha_bound,
        within_bound=within,
    )
    if not within:
        logger.warning("trial %d: bound violated (ratio %r, alpha bound %r)", trial, report.ratio, report.alpha_bound)
        if counterexample_dir:
            _write_counterexample(counterexample_dir, trial, h, row)
    return row


def _write_counterexample(directory: str, trial: int, h: Hypergraph, row: BoundRow) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"counterexample-{trial}.json")
    InstanceRepository(path).save_counterexample(h, row.model_dump())
    return path


def run_bound_verification(
    cfg: RunConfig, m: MetricSet, threads: Optional[int] = None, counterexample_dir: Optional[str] = None
) -> List[BoundRow]:
    """Kiểm tra 1 ≤ C_alg/C* ≤ k·M·C* trên `cfg.trials` instance nhỏ có seed."""
    spec = cfg.generator or bound_default_spec()
    validate_spec(spec)
    if cfg.max_bound_n > settings.exhaustive_limit:
        raise UsageError(
            f"max_bound_n={cfg.max_bound_n} vượt quá giới hạn vét cạn {settings.exhaustive_limit}"
        )
    jobs = [partial(_bound_trial, cfg, spec, m, trial, counterexample_dir) for trial in range(cfg.trials)]
    return run_all(jobs, threads)
