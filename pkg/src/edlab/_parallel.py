"""Order-preserving parallel map, capped by the ED_LAB_THREADS variable."""

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count():
    cap = os.environ.get("ED_LAB_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def pmap(func, items, min_items=64):
    """map() that fans out to processes for large inputs; output order is input order."""
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) < min_items:
        return [func(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunk))
