"""
환경 설정 로딩
.env 파일과 QWZ_* 환경 변수에서 실행 설정을 읽는다. CLI 플래그가 우선한다.
"""
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import mpmath
from dotenv import load_dotenv

from ..core.errors import InvalidArgument

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parents[2]

MIN_PRECISION = 10

_loaded = False


def load_environment() -> None:
    """프로젝트 루트의 .env 를 한 번만 로드"""
    global _loaded
    if _loaded:
        return
    env_file = PROJECT_ROOT / ".env"
    if env_file.exists():
        load_dotenv(env_file)
        logger.debug(f"environment loaded from {env_file}")
    _loaded = True


@dataclass(frozen=True)
class Settings:
    precision: int = 30
    workers: int = 1
    grid_bound: int = 12
    log_level: str = "INFO"
    log_file: Optional[str] = None
    term_cache_size: int = 20000

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise InvalidArgument(f"precision must be >= {MIN_PRECISION}, got {self.precision}")
        if self.workers < 1:
            raise InvalidArgument(f"workers must be >= 1, got {self.workers}")
        if self.grid_bound < 0:
            raise InvalidArgument(f"grid bound must be >= 0, got {self.grid_bound}")
        if self.term_cache_size < 1:
            raise InvalidArgument(f"term cache size must be >= 1, got {self.term_cache_size}")

    @property
    def tolerance(self) -> mpmath.mpf:
        """numeric pass threshold 10^-(precision-10)"""
        return tolerance_for(self.precision)


def tolerance_for(precision: int) -> mpmath.mpf:
    with mpmath.workdps(precision + 10):
        return mpmath.mpf(10) ** (-(precision - MIN_PRECISION))


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError as e:
        raise InvalidArgument(f"{name} must be an integer, got {raw!r}") from e


def load_settings() -> Settings:
    """환경 변수에서 Settings 생성"""
    load_environment()
    return Settings(
        precision=_int_env("QWZ_PRECISION", 30),
        workers=_int_env("QWZ_WORKERS", 1),
        grid_bound=_int_env("QWZ_GRID_BOUND", 12),
        log_level=os.getenv("QWZ_LOG_LEVEL", "INFO").upper(),
        log_file=os.getenv("QWZ_LOG_FILE") or None,
        term_cache_size=_int_env("QWZ_TERM_CACHE_SIZE", 20000),
    )
