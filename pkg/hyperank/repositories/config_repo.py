import os
from typing import Union

from pydantic import ValidationError

from ..errors import ConfigurationError
from ..models.bench import RunConfig
from ..models.metric import MetricSet
from ..services.metric_ops import PRESETS, get_preset
from .base import describe_errors, field_errors, parse_json, read_file


def parse_metric_set(data: bytes) -> MetricSet:
    """Dạng {"name", "entries": [...]} hoặc một danh sách {attribute, function, mu}."""
    raw = parse_json(data, "metric set")
    if isinstance(raw, list):
        raw = {"entries": raw}
    try:
        return MetricSet.model_validate(raw)
    except ValidationError as exc:
        raise ConfigurationError(f"metric set: {describe_errors(exc)}", field_errors(exc)) from None


def resolve_metrics(value: Union[str, MetricSet]) -> MetricSet:
    """Tên preset, đường dẫn tới file metric set, hoặc metric set viết trực tiếp."""
    if isinstance(value, MetricSet):
        return value
    if value in PRESETS or not os.path.exists(value):
        return get_preset(value)
    return parse_metric_set(read_file(value))


def parse_run_config(data: bytes) -> RunConfig:
    raw = parse_json(data, "run config")
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigurationError(f"run config: {describe_errors(exc)}", field_errors(exc)) from None


def load_run_config(path: str) -> RunConfig:
    return parse_run_config(read_file(path))
