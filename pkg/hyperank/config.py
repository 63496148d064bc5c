import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel

load_dotenv()


class Settings(BaseModel):
    app_name: str = os.getenv("HYPERANK_APP_NAME", "hyperank")
    app_debug: bool = os.getenv("HYPERANK_DEBUG", "false").lower() in ("true", "1", "t")
    log_level: str = os.getenv("HYPERANK_LOG_LEVEL", "INFO").upper()

    # 0 = tự động (os.cpu_count())
    threads: int = int(os.getenv("HYPERANK_THREADS", "0"))

    exhaustive_limit: int = int(os.getenv("HYPERANK_EXHAUSTIVE_LIMIT", "25"))
    epsilon_weight: float = float(os.getenv("HYPERANK_EPSILON_WEIGHT", "1e-12"))
    pairwise_dag_limit: int = int(os.getenv("HYPERANK_PAIRWISE_DAG_LIMIT", "10000"))

    def effective_threads(self, explicit: Optional[int] = None) -> int:
        threads = explicit if explicit is not None else self.threads
        if threads <= 0:
            return os.cpu_count() or 1
        return threads


settings = Settings()
