# smoothing/backend.py
"""
Execution backends.

Work over n elements (vertices or triangles) is cut into contiguous
chunks, `ceil(n / workers)` elements each, and every chunk is handed to
one task. `Backend.map` returns only once every chunk has finished, which
is the barrier between phases of a pass.

The kernels it runs are numba functions compiled with nogil=True, so the
thread pool runs them truly in parallel.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Callable, List, Optional, Tuple, TypeVar

T = TypeVar("T")

MAX_WORKERS_ENV = "SMARTLAP_MAX_WORKERS"


class BackendKind(str, Enum):
    SERIAL = "serial"
    PARALLEL = "parallel"


def chunk_ranges(n: int, workers: int) -> List[Tuple[int, int]]:
    """
    Contiguous [lo, hi) ranges, one per worker. The last chunks may be
    short or empty when n does not divide evenly.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1 (got {workers})")
    if n < 0:
        raise ValueError(f"n must be >= 0 (got {n})")
    size = (n + workers - 1) // workers
    return [(min(i * size, n), min((i + 1) * size, n)) for i in range(workers)]


def worker_cap() -> Optional[int]:
    raw = os.environ.get(MAX_WORKERS_ENV, "").strip()
    if not raw:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_WORKERS_ENV} must be an integer (got {raw!r})")
    return max(1, cap)


def effective_workers(requested: Optional[int]) -> int:
    """Requested count (default: cpu count), capped by SMARTLAP_MAX_WORKERS."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = worker_cap()
    if cap is not None:
        n = min(n, cap)
    return max(1, n)


class Backend:
    """Serial: one chunk, run inline. Parallel: `workers` chunks on a thread pool."""

    def __init__(self, kind: BackendKind = BackendKind.SERIAL, workers: int = 1):
        self.kind = BackendKind(kind)
        if workers < 1:
            raise ValueError(f"workers must be >= 1 (got {workers})")
        self.workers = workers if self.kind == BackendKind.PARALLEL else 1
        self._pool: Optional[ThreadPoolExecutor] = None

    @property
    def is_parallel(self) -> bool:
        return self.kind == BackendKind.PARALLEL

    def chunks(self, n: int) -> List[Tuple[int, int]]:
        return chunk_ranges(n, self.workers)

    def map(self, fn: Callable[[int, int], T], n: int) -> List[T]:
        ranges = self.chunks(n)
        if not self.is_parallel or self.workers == 1:
            return [fn(lo, hi) for lo, hi in ranges]
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.workers)
        return list(self._pool.map(lambda r: fn(r[0], r[1]), ranges))

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __enter__(self) -> "Backend":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


SERIAL = Backend(BackendKind.SERIAL, 1)
