import os
from concurrent.futures import ThreadPoolExecutor


def max_threads():
    """Worker cap from ``POLYTF_THREADS`` (default: CPU count)."""
    raw = os.environ.get("POLYTF_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def thread_map(fn, items):
    """Ordered map over ``items``, threaded when more than one worker is allowed."""
    items = list(items)
    workers = min(max_threads(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
