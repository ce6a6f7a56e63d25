from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, List, TypeVar

from config import settings

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: int = None) -> int:
    if workers is None:
        return settings.default_workers()
    return max(1, int(workers))


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = None) -> List[R]:
    """Map ``fn`` over ``items`` and return results in input order.

    numpy releases the GIL inside the heavy kernels, so a thread pool is
    enough; results never depend on the worker count because every item is
    computed by the same code path.
    """
    items = list(items)
    workers = resolve_workers(workers)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


def windowed_map(fn: Callable[[T], R], items: Iterable[T], workers: int = None) -> Iterator[R]:
    """Like ``ordered_map`` but yields lazily, keeping at most 2×workers in flight."""
    workers = resolve_workers(workers)
    if workers == 1:
        for item in items:
            yield fn(item)
        return
    window = 2 * workers
    with ThreadPoolExecutor(max_workers=workers) as executor:
        pending = []
        for item in items:
            pending.append(executor.submit(fn, item))
            if len(pending) >= window:
                yield pending.pop(0).result()
        for future in pending:
            yield future.result()
