"""
항 평가 캐시
WZ 항 F(n,k), G(n,k) 의 정확한 값은 격자 검사와 변환 p1/p2/p3 에서 같은 (n, k) 로 여러 번 다시 계산된다.
(항 식별자, n, k) 를 키로 최근 사용 순 제거(LRU)를 하는 프로세스 단위 캐시이며 워커끼리 공유하지 않는다.
"""
import functools
import logging
from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional, Tuple

logger = logging.getLogger(__name__)

_MISSING = object()

DEFAULT_MAX_ITEMS = 20000


class TermCache:
    """(prefix, 키워드 인자) -> 값, 최대 max_items 개"""

    def __init__(self, max_items: int = DEFAULT_MAX_ITEMS):
        self.max_items = max_items
        self._entries: "OrderedDict[Tuple[Hashable, ...], Any]" = OrderedDict()
        self.hits = 0
        self.misses = 0
        self.cache_saves = 0
        self.evictions = 0

    @staticmethod
    def _key(prefix: str, **kwargs) -> Tuple[Hashable, ...]:
        return (prefix,) + tuple(sorted(kwargs.items()))

    def get(self, prefix: str, **kwargs) -> Any:
        """저장된 값, 없으면 _MISSING"""
        key = self._key(prefix, **kwargs)
        if key not in self._entries:
            self.misses += 1
            return _MISSING
        self._entries.move_to_end(key)
        self.hits += 1
        return self._entries[key]

    def set(self, prefix: str, data: Any, **kwargs):
        key = self._key(prefix, **kwargs)
        self._entries[key] = data
        self._entries.move_to_end(key)
        self.cache_saves += 1
        if len(self._entries) > self.max_items:
            # 한 번에 10% 여유를 비워 매 삽입마다 제거하지 않는다
            drop = len(self._entries) - self.max_items + self.max_items // 10
            for _ in range(drop):
                self._entries.popitem(last=False)
            self.evictions += drop
            logger.warning(f"Term cache reached {self.max_items} entries, dropped {drop} least recently used")

    def get_stats(self) -> Dict[str, Any]:
        requests = self.hits + self.misses
        return {
            "total_items": len(self._entries),
            "hits": self.hits,
            "misses": self.misses,
            "hit_rate": f"{(self.hits / requests * 100) if requests else 0:.1f}%",
            "cache_saves": self.cache_saves,
            "evictions": self.evictions,
        }

    def clear(self):
        self._entries.clear()
        self.hits = self.misses = self.cache_saves = self.evictions = 0


_process_cache: Optional[TermCache] = None


def configure_term_cache(max_items: int = DEFAULT_MAX_ITEMS) -> TermCache:
    """현재 프로세스의 캐시를 max_items 크기로 새로 만든다 (풀 워커 initializer 로도 쓴다)"""
    global _process_cache
    _process_cache = TermCache(max_items=max_items)
    logger.debug(f"term cache configured with {max_items} entries")
    return _process_cache


def get_term_cache() -> TermCache:
    """현재 프로세스의 캐시 (처음 호출할 때 생성)"""
    global _process_cache
    if _process_cache is None:
        _process_cache = TermCache()
    return _process_cache


def cached_term(prefix_attr: str = "cache_key"):
    """term(self, n, k) 결과를 self.<prefix_attr> 기준으로 캐시"""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(self, n: int, k: int):
            cache = get_term_cache()
            prefix = getattr(self, prefix_attr)
            value = cache.get(prefix, n=n, k=k)
            if value is _MISSING:
                value = func(self, n, k)
                cache.set(prefix, value, n=n, k=k)
            return value
        return wrapper
    return decorator
