"""
Caching utilities
Thread-safe memo tables shared by look-ahead tests and worker pools
"""

import threading
from typing import Any, Callable, Dict, Hashable, Optional

_MISSING = object()


class SynchronizedCache:
    """A dict guarded by a lock; values are computed outside the lock."""

    def __init__(self, max_entries: Optional[int] = None):
        self._data: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()
        self._max_entries = max_entries
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable, default: Any = None) -> Any:
        with self._lock:
            return self._data.get(key, default)

    def put(self, key: Hashable, value: Any) -> Any:
        with self._lock:
            if self._max_entries is not None and len(self._data) >= self._max_entries:
                self._data.clear()
            # first writer wins, so concurrent callers agree on one value
            return self._data.setdefault(key, value)

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        with self._lock:
            value = self._data.get(key, _MISSING)
            if value is not _MISSING:
                self.hits += 1
                return value
            self.misses += 1
        return self.put(key, compute())

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._data
