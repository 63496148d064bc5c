import json
from typing import Any

from pydantic import ValidationError

from ..errors import ParseError


def parse_json(data: bytes, what: str) -> Any:
    if not data or not data.strip():
        raise ParseError(f"{what}: tài liệu rỗng")
    try:
        return json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"{what}: không phải UTF-8 ({exc.reason} tại byte {exc.start})") from None
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{what}: JSON sai định dạng tại dòng {exc.lineno}, cột {exc.colno}: {exc.msg}",
            {"line": exc.lineno, "column": exc.colno},
        ) from None


def field_errors(exc: ValidationError) -> list:
    return [
        {"path": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
        for err in exc.errors(include_url=False)
    ]


def describe_errors(exc: ValidationError) -> str:
    return "; ".join(f"{e['path'] or '<root>'}: {e['message']}" for e in field_errors(exc))


def normalize_numbers(value: Any) -> Any:
    """Số thực nguyên được đổi thành int để các tài liệu bằng nhau được ghi ra giống hệt nhau."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float) and value.is_integer() and abs(value) < 2**53:
        return int(value)
    if isinstance(value, list):
        return [normalize_numbers(v) for v in value]
    if isinstance(value, dict):
        return {k: normalize_numbers(v) for k, v in value.items()}
    return value


def dump_json(value: Any) -> bytes:
    text = json.dumps(normalize_numbers(value), sort_keys=True, ensure_ascii=False, indent=2)
    return (text + "\n").encode("utf-8")


def read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def write_file(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)
