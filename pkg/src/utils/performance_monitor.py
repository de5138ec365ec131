"""
검증 작업 시간 측정
작업(job) 하나를 step 으로 재고, 실행이 끝나면 작업 종류별 합계와 가장 느린 작업을 로그로 남긴다.
워커 프로세스의 측정값은 StepTiming 으로 돌려받아 merge 한다.
"""
import logging
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, List, Optional

logger = logging.getLogger(__name__)

# 전체 작업 시간 중 이 비율(%) 이상이면 느린 작업으로 보고
SLOW_JOB_SHARE = 20.0


@dataclass
class StepTiming:
    """작업 하나의 측정값 (pickle 가능)"""
    step_name: str
    start_time: float
    end_time: float
    success: bool = True
    error_message: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def duration_seconds(self) -> float:
        return round(self.end_time - self.start_time, 3)

    @property
    def elapsed_ms(self) -> float:
        return round((self.end_time - self.start_time) * 1000, 3)

    @property
    def kind(self) -> str:
        # "th1 m=5" -> "th1"
        return self.metadata.get("kind") or self.step_name.split(" ", 1)[0]


@dataclass
class PerformanceReport:
    session_id: str
    wall_seconds: float
    step_timings: List[StepTiming]
    slow_jobs: List[Dict[str, Any]]
    timestamp: str

    @property
    def total_steps(self) -> int:
        return len(self.step_timings)

    @property
    def failed_steps(self) -> int:
        return sum(1 for t in self.step_timings if not t.success)


class PerformanceMonitor:
    """한 번의 qwz 실행에 대한 작업 시간 모음"""

    def __init__(self, session_id: Optional[str] = None):
        self.session_id = session_id or f"run_{int(time.time())}"
        self.step_timings: List[StepTiming] = []
        self._started = time.perf_counter()

    @contextmanager
    def measure_step(self, step_name: str, metadata: Optional[Dict[str, Any]] = None) -> Iterator[None]:
        """with 블록 하나를 작업 하나로 측정; 예외는 기록 후 다시 던진다"""
        timing = StepTiming(step_name=step_name, start_time=time.perf_counter(), end_time=0.0,
                            metadata=dict(metadata or {}))
        logger.debug(f"[{self.session_id}] start {step_name}")
        try:
            yield
        except Exception as e:
            timing.success = False
            timing.error_message = str(e)
            logger.error(f"[{self.session_id}] {step_name} raised {type(e).__name__}: {e}")
            raise
        finally:
            timing.end_time = time.perf_counter()
            self.step_timings.append(timing)
            logger.debug(f"[{self.session_id}] done {step_name} ({timing.elapsed_ms} ms)")

    def last_timing(self) -> Optional[StepTiming]:
        return self.step_timings[-1] if self.step_timings else None

    def merge(self, timings: List[StepTiming]):
        self.step_timings.extend(timings)

    def _slow_jobs(self) -> List[Dict[str, Any]]:
        busy = sum(t.end_time - t.start_time for t in self.step_timings)
        if busy <= 0:
            return []
        slow = []
        for timing in sorted(self.step_timings, key=lambda t: t.end_time - t.start_time, reverse=True):
            share = (timing.end_time - timing.start_time) / busy * 100
            if share < SLOW_JOB_SHARE:
                break
            slow.append({"step_name": timing.step_name, "elapsed_ms": timing.elapsed_ms,
                         "share": round(share, 1)})
        return slow

    def get_current_report(self) -> PerformanceReport:
        return PerformanceReport(
            session_id=self.session_id,
            wall_seconds=round(time.perf_counter() - self._started, 3),
            step_timings=list(self.step_timings),
            slow_jobs=self._slow_jobs(),
            timestamp=datetime.now(timezone.utc).isoformat(),
        )

    def get_step_summary(self) -> Dict[str, Dict[str, Any]]:
        """작업 종류별 호출 수, 합계/최대/평균 ms, 실패 수"""
        summary: Dict[str, Dict[str, Any]] = {}
        for timing in self.step_timings:
            entry = summary.setdefault(timing.kind, {"total_calls": 0, "total_ms": 0.0, "max_ms": 0.0,
                                                     "failures": 0})
            entry["total_calls"] += 1
            entry["total_ms"] += timing.elapsed_ms
            entry["max_ms"] = max(entry["max_ms"], timing.elapsed_ms)
            entry["failures"] += 0 if timing.success else 1
        for entry in summary.values():
            entry["total_ms"] = round(entry["total_ms"], 3)
            entry["avg_ms"] = round(entry["total_ms"] / entry["total_calls"], 3)
        return summary

    def export_to_dict(self) -> Dict[str, Any]:
        report = self.get_current_report()
        return {
            "session_id": report.session_id,
            "timestamp": report.timestamp,
            "wall_seconds": report.wall_seconds,
            "step_timings": [asdict(t) for t in report.step_timings],
            "slow_jobs": report.slow_jobs,
            "step_summary": self.get_step_summary(),
        }

    def log_performance_summary(self):
        report = self.get_current_report()
        logger.info(f"[{self.session_id}] {report.total_steps} jobs in {report.wall_seconds:.3f}s wall, "
                    f"{report.failed_steps} raised")
        for kind, entry in sorted(self.get_step_summary().items(), key=lambda kv: -kv[1]["total_ms"]):
            logger.info(f"  {kind:<20} x{entry['total_calls']:<4} total {entry['total_ms']:.1f} ms, "
                        f"max {entry['max_ms']:.1f} ms")
        for job in report.slow_jobs:
            logger.info(f"  slow: {job['step_name']} {job['elapsed_ms']:.1f} ms ({job['share']}%)")
