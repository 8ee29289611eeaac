"""Optional thread fan-out for embarrassingly parallel evaluations.

RELAYBOUND_THREADS caps the worker count; unset or 1 keeps everything on the
calling thread.  Results are returned in input order either way, so outputs
do not depend on the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get("RELAYBOUND_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"RELAYBOUND_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(n, os.cpu_count() or 1))


def map_ordered(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
