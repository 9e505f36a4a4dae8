"""Thread-pool helper honoring the BPBA_THREADS cap.

Work items are independent and all data is immutable, so threads need no
coordination; results are reduced in input order regardless of completion
order.  With the cap unset or 1 everything runs serially.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_cap() -> int:
    raw = os.environ.get("BPBA_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError:
        return 1
    return max(1, cap)


def parallel_map(fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
    cap = thread_cap()
    if cap <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as pool:
        return list(pool.map(fn, items))
