"""Order-preserving parallel map.

Results are always returned in input order, so the thread count never changes
an output.  The count comes from ``set_threads`` or ``HASSE_JETS_THREADS``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["pmap", "set_threads", "get_threads"]

_threads = max(1, int(os.environ.get("HASSE_JETS_THREADS", "1") or 1))


def set_threads(n: int) -> None:
    global _threads
    _threads = max(1, int(n))


def get_threads() -> int:
    return _threads


def pmap(fn, items) -> list:
    items = list(items)
    if _threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_threads) as ex:
        return list(ex.map(fn, items))
