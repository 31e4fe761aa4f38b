"""Deterministic thread-pool mapping.

Work items are pure functions of their index, so results are identical
for any pool size; OPTSAMPLE_THREADS controls the width (default: all
cores).
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    env = os.environ.get("OPTSAMPLE_THREADS", "").strip()
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("OPTSAMPLE_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def parallel_map(fn, items):
    """map() preserving input order, threaded when it can pay off."""
    items = list(items)
    workers = min(thread_count(), len(items)) if items else 1
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
