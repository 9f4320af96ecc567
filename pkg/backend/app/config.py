import os
from pathlib import Path

import psutil
from dotenv import load_dotenv

load_dotenv()


def _int_list(raw: str) -> list:
    return [int(part) for part in raw.split(",") if part.strip()]


def _default_jobs() -> int:
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


class Settings:
    PROJECT_NAME: str = "GraSSP"
    PROJECT_VERSION: str = "0.1.0"

    # Verification bounds
    SEGMENTS: list = _int_list(os.getenv("GRASSP_SEGMENTS", "2,3"))
    MAX_LEN: int = int(os.getenv("GRASSP_MAX_LEN", "6"))
    MIN_SEG_LEN: int = int(os.getenv("GRASSP_MIN_SEG_LEN", "1"))
    DOMAIN: str = os.getenv("GRASSP_DOMAIN", "0,1,2,3")

    # Candidate space
    MAX_CONST_PREFIX: int = int(os.getenv("GRASSP_MAX_CONST_PREFIX", "3"))
    MAX_CONJUNCTS: int = int(os.getenv("GRASSP_MAX_CONJUNCTS", "2"))

    # Execution
    JOBS: int = int(os.getenv("GRASSP_JOBS", "0")) or _default_jobs()
    TIMEOUT: float = float(os.getenv("GRASSP_TIMEOUT", "60"))

    LOG_LEVEL: str = os.getenv("GRASSP_LOG_LEVEL", "")
    BENCH_DIR: Path = Path(os.getenv("GRASSP_BENCH_DIR", str(Path(__file__).resolve().parent.parent / "benchmarks")))


settings = Settings()
