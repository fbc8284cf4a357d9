import multiprocessing

import psutil

from . import config
from .logger import log_event


def worker_count(requested=None):
    """
    Number of worker processes to use for a sweep.

    `requested` falls back to config.WORKERS; the result never exceeds the
    number of physical cores.
    """
    requested = config.WORKERS if requested is None else requested
    if requested <= 1:
        return 1
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    return max(1, min(requested, cores))


def sweep_map(fn, items, workers=None):
    """
    Maps `fn` over `items` and returns the results in input order.

    `fn` must be a picklable top-level function when more than one worker
    is used. Results are identical to the sequential run.
    """
    items = list(items)
    count = worker_count(workers)
    if count == 1 or len(items) < 2:
        return [fn(item) for item in items]

    log_event("Starting parallel sweep", level="DEBUG", workers=count, items=len(items))
    with multiprocessing.Pool(processes=count) as pool:
        return pool.map(fn, items)
