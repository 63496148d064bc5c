from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from ..config import settings

T = TypeVar("T")
R = TypeVar("R")

MIN_CHUNK = 256


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None, min_chunk: int = MIN_CHUNK
) -> List[R]:
    """Map giữ nguyên thứ tự; kết quả không phụ thuộc số worker."""
    items = list(items)
    workers = settings.effective_threads(threads)
    if workers <= 1 or len(items) < 2 * min_chunk:
        return [fn(item) for item in items]

    size = max(min_chunk, -(-len(items) // workers))
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda chunk: [fn(item) for item in chunk], chunks)
        return [result for part in parts for result in part]


def run_all(tasks: List[Callable[[], R]], threads: Optional[int] = None) -> List[R]:
    """Chạy các thunk độc lập, trả kết quả theo thứ tự gửi vào."""
    workers = settings.effective_threads(threads)
    if workers <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [f.result() for f in futures]
