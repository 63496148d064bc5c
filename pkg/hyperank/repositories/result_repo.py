import csv
import io
import json
import logging
import math
import sys
from typing import Any, List, Optional, Sequence, Set, Type

from pydantic import BaseModel

from ..errors import UsageError
from ..models.bench import OutputFormat
from .base import write_file

logger = logging.getLogger(__name__)


def format_number(x: float) -> str:
    return format(x, ".9g")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format_number(value))
    if hasattr(value, "value"):
        return value.value
    return value


def _json_tree(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _json_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_tree(v) for v in value]
    return _json_value(value)


def _header(rows: Sequence[BaseModel], row_type: Optional[Type[BaseModel]]) -> List[str]:
    model = row_type or (type(rows[0]) if rows else None)
    if model is None:
        raise UsageError("không thể xuất bảng rỗng khi không biết kiểu dòng")
    return list(model.model_fields)


def emit(
    rows: Sequence[BaseModel],
    fmt: OutputFormat = OutputFormat.CSV,
    row_type: Optional[Type[BaseModel]] = None,
) -> bytes:
    """Xuất các dòng dạng CSV (thứ tự cột cố định) hoặc mảng JSON; số giữ 9 chữ số có nghĩa."""
    header = _header(rows, row_type)
    if OutputFormat(fmt) == OutputFormat.JSON:
        docs = [{name: _json_value(getattr(row, name)) for name in header} for row in rows]
        return (json.dumps(docs, ensure_ascii=False, allow_nan=False) + "\n").encode("utf-8")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(getattr(row, name)) for name in header])
    return buffer.getvalue().encode("utf-8")


def emit_documents(docs: Sequence[BaseModel], exclude: Optional[Set[str]] = None) -> bytes:
    """Xuất tài liệu lồng nhau dạng mảng JSON; số được làm tròn như trong emit."""
    tree = [_json_tree(doc.model_dump(exclude=exclude)) for doc in docs]
    return (json.dumps(tree, ensure_ascii=False, allow_nan=False) + "\n").encode("utf-8")


class ResultRepository:
    def __init__(self, path: Optional[str] = None):
        self.path = path

    def write(self, data: bytes) -> None:
        """Ghi kết quả ra file, hoặc stdout nếu không có đường dẫn."""
        if self.path is None:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
            return
        write_file(self.path, data)
        logger.info("wrote %d byte(s) to %s", len(data), self.path)
