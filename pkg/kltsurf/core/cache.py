"""
Memoization utilities for repeated exact computations (Δ values, discrepancy vectors)
"""

import threading
from collections import OrderedDict
from functools import wraps
from typing import Any, Callable, Hashable, Optional

from kltsurf.core.config import settings

_MISSING = object()


class SimpleMemo:
    """Bounded in-memory memo guarded by a lock.

    Values are pure functions of their keys, so eviction order only affects speed.
    Oldest insertions are evicted first once ``max_entries`` is reached.
    """

    def __init__(self, max_entries: int = 100_000):
        self._store: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._max_entries = max_entries
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable, default: Any = None) -> Any:
        """Get value from memo"""
        with self._lock:
            value = self._store.get(key, _MISSING)
            if value is _MISSING:
                self.misses += 1
                return default
            self.hits += 1
            return value

    def set(self, key: Hashable, value: Any) -> None:
        """Store value, evicting the oldest entries past capacity"""
        if self._max_entries <= 0:
            return
        with self._lock:
            self._store[key] = value
            while len(self._store) > self._max_entries:
                self._store.popitem(last=False)

    def clear(self) -> None:
        """Clear all entries and counters"""
        with self._lock:
            self._store.clear()
            self.hits = 0
            self.misses = 0

    def __len__(self) -> int:
        with self._lock:
            return len(self._store)

    def stats(self) -> dict:
        with self._lock:
            return {
                "entries": len(self._store),
                "max_entries": self._max_entries,
                "hits": self.hits,
                "misses": self.misses,
            }


# Global memo instance shared by the services of one process
memo = SimpleMemo(max_entries=settings.MEMO_MAX_ENTRIES)


def memoized(key_prefix: Optional[str] = None, store: Optional[SimpleMemo] = None):
    """Decorator memoizing a pure function on its (hashable) arguments"""

    def decorator(func: Callable) -> Callable:
        prefix = key_prefix or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            target = store if store is not None else memo
            key = (prefix, args, tuple(sorted(kwargs.items()))) if kwargs else (prefix, args)
            value = target.get(key, _MISSING)
            if value is not _MISSING:
                return value
            value = func(*args, **kwargs)
            target.set(key, value)
            return value

        wrapper.uncached = func  # type: ignore[attr-defined]
        return wrapper

    return decorator
