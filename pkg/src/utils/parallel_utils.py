"""Parallel map over independent work items with dask."""

from typing import Callable, Iterable, TypeVar

import dask

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """
    Apply `func` to every item, preserving order.

    Args:
        func (Callable): A pure function of one argument.
        items (Iterable): The work items.
        jobs (int, optional): Number of worker threads. 1 runs everything in the calling
            thread. Defaults to 1.

    Returns:
        list: The results in the order of `items`.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    tasks = [dask.delayed(func)(item) for item in items]
    return list(dask.compute(*tasks, scheduler="threads", num_workers=jobs))
