from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from .logging import debug


T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], chunks: Iterable[T], threads: int = 1) -> List[R]:
    """Map func over chunks, in worker processes when threads > 1

    Results come back in chunk order whatever the scheduling was.
    """
    chunks = list(chunks)
    if threads <= 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]
    debug(f"Running {len(chunks)} chunks on {threads} workers")
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, chunks))
