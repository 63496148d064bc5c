import argparse
import logging
from typing import Any, Dict

from pydantic import ValidationError

from ..errors import ConfigurationError
from ..models.bench import RunConfig
from ..repositories.base import describe_errors, field_errors
from ..repositories.config_repo import load_run_config, resolve_metrics
from ..schemas.result import AllocationRow, BoundRow, SchedulingRow
from ..services.experiments import run_allocation_experiment, run_bound_verification, run_scheduling_experiment
from .common import add_output_args, add_threads_arg, csv_list, write_rows

logger = logging.getLogger(__name__)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="run configuration (JSON); flags override its values")
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--metrics", help="metric preset name or metric-set file")
    parser.add_argument("--key", choices=["upsilon", "tensor"])
    add_output_args(parser, default=None)
    add_threads_arg(parser)


def register(subparsers) -> None:
    bench = subparsers.add_parser("bench", help="seeded experiments")
    kinds = bench.add_subparsers(dest="experiment", required=True)

    alloc = kinds.add_parser("alloc", help="allocation cost and latency per size")
    _common(alloc)
    alloc.add_argument("--sizes", type=csv_list, help="comma-separated node counts")
    alloc.add_argument("--k", type=int)
    alloc.add_argument("--allocators", type=csv_list, help="comma-separated allocator names")
    alloc.set_defaults(handler=run_alloc)

    sched = kinds.add_parser("sched", help="scheduler cost and latency per pool size")
    _common(sched)
    sched.add_argument("--sizes", type=csv_list, help="comma-separated VM counts")
    sched.add_argument("--schedulers", type=csv_list, help="comma-separated scheduler names")
    sched.add_argument("--generated-tasks", type=int, help="extra generated workload size")
    sched.add_argument("--exclusive", action="store_true", default=None)
    sched.set_defaults(handler=run_sched)

    bound = kinds.add_parser("bound", help="approximation bound verification on small instances")
    _common(bound)
    bound.add_argument("--max-n", dest="max_bound_n", type=int)
    bound.add_argument("--max-k", dest="max_bound_k", type=int)
    bound.add_argument("--counterexamples", help="directory for violating instances")
    bound.set_defaults(handler=run_bound)


_OVERRIDES = (
    "sizes", "trials", "seed", "k", "metrics", "key", "allocators", "schedulers",
    "generated_tasks", "exclusive", "max_bound_n", "max_bound_k",
)


def build_config(args: argparse.Namespace, metrics_field: str = "metrics") -> RunConfig:
    base: Dict[str, Any] = {}
    if args.config:
        base = load_run_config(args.config).model_dump(exclude_unset=True)
    for name in _OVERRIDES:
        value = getattr(args, name, None)
        if value is None:
            continue
        base[metrics_field if name == "metrics" else name] = value
    try:
        return RunConfig.model_validate(base)
    except ValidationError as exc:
        raise ConfigurationError(f"run config: {describe_errors(exc)}", field_errors(exc)) from None


def run_alloc(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    logger.info("bench alloc: sizes=%s trials=%d k=%d seed=%d", list(cfg.sizes), cfg.trials, cfg.k, cfg.seed)
    rows = run_allocation_experiment(cfg, resolve_metrics(cfg.metrics), args.threads)
    write_rows(args, rows, AllocationRow, cfg.format, cfg.output)
    return 0


def run_sched(args: argparse.Namespace) -> int:
    cfg = build_config(args, metrics_field="sched_metrics")
    logger.info("bench sched: sizes=%s trials=%d seed=%d", list(cfg.sizes), cfg.trials, cfg.seed)
    rows = run_scheduling_experiment(cfg, resolve_metrics(cfg.sched_metrics), args.threads)
    write_rows(args, rows, SchedulingRow, cfg.format, cfg.output)
    return 0


def run_bound(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    rows = run_bound_verification(cfg, resolve_metrics(cfg.metrics), args.threads, args.counterexamples)
    write_rows(args, rows, BoundRow, cfg.format, cfg.output)
    violations = [r.trial for r in rows if r.within_bound is False]
    if violations:
        logger.error("bound violated on %d trial(s): %s", len(violations), violations)
        return 1
    return 0
