"""Worker pool whose results come back in submission order."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from wre.errors import ParameterError

THREADS_ENV = "WRE_THREADS"


def resolve_threads(requested: int | None = None) -> int:
    """Worker count: ``WRE_THREADS`` wins over ``requested``; default 1."""
    raw = os.environ.get(THREADS_ENV)
    if raw is not None and raw.strip():
        try:
            value = int(raw)
        except ValueError:
            raise ParameterError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    else:
        value = 1 if requested is None else int(requested)
    if value < 1:
        raise ParameterError(f"thread count must be >= 1, got {value}")
    return value


def ordered_map(fn, items, threads: int = 1) -> list:
    """``[fn(x) for x in items]``, evaluated on ``threads`` workers.

    Workers share nothing mutable and ``Executor.map`` yields in input order,
    so the merged list is identical to the serial one.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))
