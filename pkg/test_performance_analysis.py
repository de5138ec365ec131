"""
성능 측정 유틸리티 테스트
작업별 시간 측정, 병목 분석, 항 캐시 통계
"""
import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.utils.performance_monitor import PerformanceMonitor  # noqa: E402
from src.utils.term_cache import (DEFAULT_MAX_ITEMS, TermCache, cached_term, configure_term_cache,  # noqa: E402
                                  get_term_cache)


def test_measure_step_records_timing():
    monitor = PerformanceMonitor(session_id="unit")
    with monitor.measure_step("wz_grid pair=guo", metadata={"kind": "wz_grid"}):
        sum(range(1000))
    timing = monitor.last_timing()
    assert timing.step_name == "wz_grid pair=guo"
    assert timing.success
    assert timing.elapsed_ms >= 0
    assert timing.metadata == {"kind": "wz_grid"}


def test_measure_step_reraises_and_marks_failure():
    monitor = PerformanceMonitor()
    with pytest.raises(ValueError):
        with monitor.measure_step("th1 m=3"):
            raise ValueError("boom")
    assert not monitor.last_timing().success
    assert monitor.last_timing().error_message == "boom"
    report = monitor.get_current_report()
    assert report.failed_steps == 1 and report.total_steps == 1


def test_step_summary_groups_by_kind():
    monitor = PerformanceMonitor()
    for step in ("th1 m=3", "th1 m=5", "super which=th1,p=5"):
        with monitor.measure_step(step):
            pass
    summary = monitor.get_step_summary()
    assert summary["th1"]["total_calls"] == 2
    assert summary["super"]["total_calls"] == 1
    exported = monitor.export_to_dict()
    assert len(exported["step_timings"]) == 3


def test_merge_collects_worker_timings():
    worker = PerformanceMonitor()
    with worker.measure_step("cyclo m=3"):
        pass
    parent = PerformanceMonitor()
    parent.merge(worker.step_timings)
    assert parent.get_current_report().total_steps == 1


def test_term_cache_hits_and_eviction():
    cache = TermCache(max_items=10)
    cache.set("F[guo]", "value", n=1, k=2)
    assert cache.get("F[guo]", n=1, k=2) == "value"
    assert cache.get("F[guo]", n=2, k=1) != "value"
    for i in range(20):
        cache.set("G[guo]", i, n=i, k=0)
    stats = cache.get_stats()
    assert stats["hits"] == 1
    assert stats["misses"] == 1
    assert stats["total_items"] <= 10
    assert stats["evictions"] > 0
    cache.clear()
    assert cache.get_stats()["total_items"] == 0


def test_cached_term_decorator():
    calls = []

    class Counter:
        cache_key = "counter|unit-test"

        @cached_term()
        def __call__(self, n, k):
            calls.append((n, k))
            return n * 10 + k

    counter = Counter()
    assert counter(1, 2) == 12
    assert counter(1, 2) == 12
    assert calls == [(1, 2)]
    assert get_term_cache().get_stats()["hits"] >= 1


def test_configure_term_cache_replaces_process_cache():
    cache = configure_term_cache(3)
    assert get_term_cache() is cache
    assert cache.max_items == 3
    assert configure_term_cache().max_items == DEFAULT_MAX_ITEMS


if __name__ == "__main__":
    print("[TEST] 성능 측정 유틸리티 테스트...")
    sys.exit(pytest.main([__file__, "-q"]))
