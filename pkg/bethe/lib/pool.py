"""Worker pool for independent grid points; results come back in input order."""

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    return os.cpu_count() or 1


def map_ordered(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> list[R]:
    """Apply fn to every item, in a process pool when workers > 1.

    fn must be picklable (a module-level function or a functools.partial of one).
    """
    items = list(items)
    workers = default_workers() if workers is None else max(1, workers)
    total = len(items)
    if workers == 1 or total <= 1:
        results = []
        for done, item in enumerate(items, 1):
            results.append(fn(item))
            if progress:
                progress(done, total)
        return results

    logger.debug(f"Dispatching {total} items to {workers} workers")
    chunk = max(1, total // (workers * 4))
    results = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for done, result in enumerate(pool.map(fn, items, chunksize=chunk), 1):
            results.append(result)
            if progress:
                progress(done, total)
    return results
