"""Order-preserving parallel map capped by the ``PWC_THREADS`` environment variable."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("PWC_THREADS", "1") or 1)
    return max(1, threads)


def pmap_ordered(fn, items, threads: int | None = None) -> list:
    """``[fn(x) for x in items]``; results keep input order whatever the schedule."""
    items = list(items)
    n = thread_count(threads)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
