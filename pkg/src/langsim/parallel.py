"""Worker-count control for data-parallel matrix builds.

LANGSIM_THREADS caps the number of worker threads; unset or 1 means serial.
Results never depend on the schedule: each work item owns disjoint output
slots.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")

ENV_VAR = "LANGSIM_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def run_tasks(fn: Callable[[T], None], items: Iterable[T]) -> None:
    """Apply fn to every item, threaded when LANGSIM_THREADS > 1."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        for item in items:
            fn(item)
        return
    with ThreadPoolExecutor(max_workers=n) as pool:
        # list() propagates the first worker exception
        list(pool.map(fn, items))
