import pytest

from hyperank.models import Hypergraph, MetricSet
from hyperank.repositories.instance_repo import load_instance
from hyperank.repositories.task_repo import load_tasks
from hyperank.services.metric_ops import get_preset

from .helpers import DATA


@pytest.fixture
def appendix_bytes() -> bytes:
    return (DATA / "appendix_instance.json").read_bytes()


@pytest.fixture
def appendix(appendix_bytes) -> Hypergraph:
    return load_instance(appendix_bytes)


@pytest.fixture
def appendix_metrics() -> MetricSet:
    return get_preset("appendix")


@pytest.fixture
def scheduling_metrics() -> MetricSet:
    return get_preset("scheduling")


@pytest.fixture
def vms() -> Hypergraph:
    return load_instance((DATA / "scheduling_vms.json").read_bytes())


@pytest.fixture
def reference_tasks():
    return load_tasks((DATA / "reference_tasks.json").read_bytes())
