from typing import List

from pydantic import TypeAdapter, ValidationError

from ..errors import ParseError
from ..models.scheduling import SchedTask
from ..models.tables import SchemaEntity
from ..schemas.instance import SchemaEntityDoc, TaskDoc
from .base import describe_errors, field_errors, parse_json, read_file

_tasks = TypeAdapter(List[TaskDoc])
_entities = TypeAdapter(List[SchemaEntityDoc])


def load_tasks(data: bytes) -> List[SchedTask]:
    """Task đến theo thứ tự trong tài liệu, trừ khi `arrival_index` chỉ định khác."""
    raw = parse_json(data, "tasks")
    try:
        docs = _tasks.validate_python(raw)
    except ValidationError as exc:
        raise ParseError(f"tasks: {describe_errors(exc)}", field_errors(exc)) from None
    ids = [d.id for d in docs]
    if len(set(ids)) != len(ids):
        raise ParseError(f"tasks: id task bị trùng trong {ids}")
    return [
        SchedTask(
            id=d.id,
            cpu_cores=d.cpu_cores,
            ram_gib=d.ram_gib,
            exec_seconds=d.exec_seconds,
            arrival_index=d.arrival_index if d.arrival_index is not None else i,
        )
        for i, d in enumerate(docs)
    ]


def load_schema_entities(data: bytes) -> List[SchemaEntity]:
    raw = parse_json(data, "table schema")
    try:
        docs = _entities.validate_python(raw)
    except ValidationError as exc:
        raise ParseError(f"table schema: {describe_errors(exc)}", field_errors(exc)) from None
    return [SchemaEntity(table=d.table, column=d.column, context=d.context) for d in docs]


class TaskRepository:
    def __init__(self, path: str):
        self.path = path

    def list(self) -> List[SchedTask]:
        """Lấy danh sách task từ file."""
        return load_tasks(read_file(self.path))


class TableSchemaRepository:
    def __init__(self, path: str):
        self.path = path

    def list(self) -> List[SchemaEntity]:
        """Lấy danh sách cột (bảng.cột + ngữ cảnh) từ file."""
        return load_schema_entities(read_file(self.path))
