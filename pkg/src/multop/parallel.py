from joblib import Parallel, delayed
from typing import Callable, Iterable, List

import os

THREADS_ENV = "DA_LAB_THREADS"


def worker_count() -> int:
    value = os.environ.get(THREADS_ENV, "1")
    try:
        n_jobs = int(value)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {value!r}")
    return max(n_jobs, 1)


def parallel_map(func: Callable, items: Iterable, n_jobs: int = None) -> List:
    """Ordered map over items; results come back in input order whatever the worker count."""
    items = list(items)
    if n_jobs is None:
        n_jobs = worker_count()

    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(func)(item) for item in items)
