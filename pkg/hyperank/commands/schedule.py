import argparse

from ..models.ranking import RankKey
from ..models.scheduling import SchedulerKind
from ..repositories.config_repo import resolve_metrics
from ..repositories.instance_repo import InstanceRepository
from ..repositories.task_repo import TaskRepository
from ..schemas.result import AssignmentOut
from ..services.scheduler import schedule
from .common import add_output_args, add_threads_arg, write_rows


def register(subparsers) -> None:
    parser = subparsers.add_parser("schedule", help="assign tasks to VMs")
    parser.add_argument("--tasks", required=True, help="task list (JSON)")
    parser.add_argument("--vms", required=True, help="VM pool as an instance document over the scheduling schema")
    parser.add_argument("--exclusive", action="store_true", help="at most one task per VM")
    parser.add_argument(
        "--scheduler", choices=[k.value for k in SchedulerKind] + ["all"], default=SchedulerKind.HYPERGRAPH.value
    )
    parser.add_argument("--metrics", default="scheduling", help="metric preset name or metric-set file")
    parser.add_argument("--key", choices=[k.value for k in RankKey], default=RankKey.UPSILON.value)
    add_output_args(parser)
    add_threads_arg(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    tasks = TaskRepository(args.tasks).list()
    vms = InstanceRepository(args.vms).load()
    m = resolve_metrics(args.metrics)
    kinds = list(SchedulerKind) if args.scheduler == "all" else [SchedulerKind(args.scheduler)]

    rows = []
    for kind in kinds:
        result = schedule(kind, tasks, vms, m, exclusive=args.exclusive, key=RankKey(args.key), threads=args.threads)
        rows.extend(
            AssignmentOut(scheduler=kind.value, task_id=a.task_id, node_id=a.node_id, score=a.score, cost=a.cost)
            for a in result.assignments
        )
    write_rows(args, rows, AssignmentOut)
    return 0
