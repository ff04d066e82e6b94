"""Order-preserving process-pool map used by every sweep."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

WORKERS_ENV = "NHFLOQUET_WORKERS"


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(n, 1)


def parallel_map(func, items, workers: int | None = None) -> list:
    """``[func(x) for x in items]``, optionally spread over worker processes.

    Results come back in input order whatever the completion order, so output
    is independent of ``workers``. ``func`` must be a picklable top-level function.
    """
    items = list(items)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))
