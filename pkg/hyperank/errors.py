from typing import Any, Optional, Sequence


class HyperankError(Exception):
    """Lỗi gốc; `exit_code` là mã thoát CLI trả về."""

    exit_code = 1

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.detail = detail

    def payload(self) -> dict:
        payload = {"detail": str(self)}
        if self.detail is not None:
            payload["context"] = self.detail
        return payload


class ParseError(HyperankError):
    pass


class InstanceValidationError(HyperankError):
    def __init__(self, report: Sequence[Any]):
        lines = "; ".join(f"{v.path}: {v.message}" for v in report)
        super().__init__(f"instance không hợp lệ ({len(report)} vi phạm): {lines}")
        self.report = list(report)
        self.detail = [v.model_dump() for v in report]


class ConfigurationError(HyperankError):
    pass


class UsageError(HyperankError):
    pass


class MatchDomainError(HyperankError):
    def __init__(self, function: str, node_value: float, task_value: float, path: str = ""):
        where = f" tại {path}" if path else ""
        super().__init__(
            f"{function}({node_value!r}, {task_value!r}) nằm ngoài miền xác định của hàm{where}",
            {"function": function, "node_value": node_value, "task_value": task_value, "path": path},
        )
        self.function = function
        self.node_value = node_value
        self.task_value = task_value
        self.path = path

    def at(self, path: str) -> "MatchDomainError":
        inner = f"{path}.{self.path}" if self.path else path
        return MatchDomainError(self.function, self.node_value, self.task_value, inner)


class EntityReferenceError(HyperankError):
    pass


class CycleError(HyperankError):
    def __init__(self, cycle: Sequence[int]):
        super().__init__(f"đồ thị phụ thuộc có chu trình: {' -> '.join(map(str, cycle))}", list(cycle))
        self.cycle = list(cycle)


class DegenerateInstanceError(HyperankError):
    pass


class InfeasibleError(HyperankError):
    exit_code = 2
