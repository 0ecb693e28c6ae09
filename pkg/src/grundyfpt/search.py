"""First-success search over an ordered candidate list, optionally in parallel.

Candidates arrive sorted so the first success is the answer.  Parallel runs
evaluate fixed-size batches and still return the lowest-index success, so the
result never depends on the worker count.
"""

from __future__ import annotations

import multiprocessing
import os
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from typing import Any

_CHECK: Callable[[int], Any] | None = None
MIN_PARALLEL = 64  # below this many candidates a pool costs more than it saves


def _init(check: Callable[[int], Any]) -> None:
    global _CHECK
    _CHECK = check


def _run(index: int) -> Any:
    assert _CHECK is not None
    return _CHECK(index)


def default_workers() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


def _merge(total: dict, part: dict) -> None:
    for key, value in part.items():
        total[key] = total.get(key, 0) + value


def first_success(
    check: Callable[[int], tuple[Any, dict]],
    count: int,
    workers: int = 1,
    stats: dict | None = None,
) -> tuple[int, Any] | None:
    """Lowest ``i < count`` whose ``check(i)`` result is not None, with that result.

    ``check`` returns ``(result, counters)``; counters of every index up to the
    success are summed into ``stats``, which therefore match across worker counts.
    """
    stats = stats if stats is not None else {}
    if workers <= 1 or count < MIN_PARALLEL:
        for i in range(count):
            result, part = check(i)
            _merge(stats, part)
            if result is not None:
                return i, result
        return None
    methods = multiprocessing.get_all_start_methods()
    ctx = multiprocessing.get_context("fork" if "fork" in methods else None)
    batch = workers * 4
    with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init, initargs=(check,)) as pool:
        for lo in range(0, count, batch):
            indices = range(lo, min(count, lo + batch))
            for i, (result, part) in zip(indices, pool.map(_run, indices)):
                _merge(stats, part)
                if result is not None:
                    return i, result
    return None
