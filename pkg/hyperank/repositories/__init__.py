from .config_repo import load_run_config, parse_metric_set, parse_run_config, resolve_metrics
from .instance_repo import InstanceRepository, canonicalize, load_instance, save_instance
from .result_repo import ResultRepository, emit, emit_documents
from .task_repo import TableSchemaRepository, TaskRepository, load_schema_entities, load_tasks
