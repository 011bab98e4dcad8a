"""Shared helpers: bounded worker pool honoring HJOINTS_THREADS.

Operations parallelized here are pure and merged in input order, so results
are identical at any thread count; HJOINTS_THREADS=1 (the default) keeps
everything sequential.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("HJOINTS_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Order-preserving map, threaded only when HJOINTS_THREADS > 1."""
    items = list(items)
    workers = min(thread_cap(), len(items)) if items else 1
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
