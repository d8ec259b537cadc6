from typing import Callable, Iterable, List
import multiprocessing as mp
import os


def num_tasks() -> int:
    """Worker processes to use when ``jobs`` is 0: ``$QVQITE_NUM_TASKS``, else the allowed cores."""
    # sched_getaffinity respects cgroup / SLURM limits; macOS lacks it
    if hasattr(os, "sched_getaffinity"):
        available = len(os.sched_getaffinity(0))
        default = available
    else:
        available = os.cpu_count() or 1
        default = 1
    n = int(os.environ.get("QVQITE_NUM_TASKS", default))
    if not 0 < n <= available:
        raise ValueError(f"QVQITE_NUM_TASKS={n} must be between 1 and the {available} available cores")
    return n


def _init_worker(global_options: dict):
    from ._global_options import _set_global_options

    _set_global_options(global_options)


def parallel_map(fn: Callable, items: Iterable, jobs: int = 1) -> List:
    """``[fn(x) for x in items]``, optionally over a process pool.

    ``jobs=0`` uses ``num_tasks()`` workers. Results are returned in input
    order. ``fn`` and the items must be picklable.
    """
    items = list(items)
    jobs = int(jobs)
    if jobs < 0:
        raise ValueError(f"jobs must be >= 0, got {jobs}")
    if jobs == 0:
        jobs = num_tasks()
    jobs = min(jobs, len(items))
    if jobs <= 1:
        return [fn(x) for x in items]
    from ._global_options import _get_latest_global_options

    # fork can hang in OpenMP-backed torch ops
    ctx = mp.get_context("forkserver")
    with ctx.Pool(
        processes=jobs,
        initializer=_init_worker,
        initargs=(_get_latest_global_options(),),
    ) as p:
        return p.map(fn, items)
