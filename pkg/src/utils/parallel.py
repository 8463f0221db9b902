"""
Record-parallel mapping that preserves input order.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    func: Callable[[T], R],
    items: Iterable[T],
    jobs: int = 1,
    chunksize: int = 64,
    initializer: Optional[Callable[..., Any]] = None,
    initargs: Sequence[Any] = (),
) -> Iterator[R]:
    """Map ``func`` over ``items``; results come back in input order.

    With ``jobs <= 1`` everything runs in-process (the initializer is still
    called once so worker-global state is set up the same way).
    """
    if jobs <= 1:
        if initializer is not None:
            initializer(*initargs)
        for item in items:
            yield func(item)
        return

    with ProcessPoolExecutor(
        max_workers=jobs, initializer=initializer, initargs=tuple(initargs)
    ) as executor:
        yield from executor.map(func, items, chunksize=chunksize)
