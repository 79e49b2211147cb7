import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FSL_JOBS", "1")))
    except ValueError:
        return 1


def pmap(fn, items, jobs=None):
    """Ordered map; fans out to a process pool when ``jobs > 1``."""
    items = list(items)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))
