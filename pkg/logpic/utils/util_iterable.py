"""
Helpers for enumerating small combinatorial families.

Example:
    >>> from logpic.utils.util_iterable import *  # NOQA
    >>> list(compositions(2, 2))
    [(0, 2), (1, 1), (2, 0)]
    >>> len(list(compositions(3, 3)))
    10
    >>> list(compositions(-1, 2))
    []
    >>> list(compositions(0, 0))
    [()]
"""
from __future__ import annotations

import itertools as it
from typing import Iterator, Sequence


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """
    All tuples of ``parts`` non-negative integers summing to ``total``, in
    lexicographic order.
    """
    if total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def num_compositions(total: int, parts: int) -> int:
    """
    Example:
        >>> from logpic.utils.util_iterable import *  # NOQA
        >>> num_compositions(3, 3)
        10
        >>> num_compositions(0, 0)
        1
    """
    import math
    if total < 0:
        return 0
    if parts == 0:
        return int(total == 0)
    return math.comb(total + parts - 1, parts - 1)


def box_vectors(lows: Sequence[int], highs: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """
    Every integer vector ``x`` with ``lows[i] <= x[i] <= highs[i]``.

    Example:
        >>> from logpic.utils.util_iterable import *  # NOQA
        >>> list(box_vectors([0, -1], [1, 0]))
        [(0, -1), (0, 0), (1, -1), (1, 0)]
    """
    return it.product(*[range(lo, hi + 1) for lo, hi in zip(lows, highs)])


def group_elements(factors: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """
    Elements of ``Z/n1 x Z/n2 x ...`` as reduced tuples.

    Example:
        >>> from logpic.utils.util_iterable import *  # NOQA
        >>> list(group_elements([2, 2]))
        [(0, 0), (0, 1), (1, 0), (1, 1)]
        >>> list(group_elements([]))
        [()]
    """
    return it.product(*[range(n) for n in factors])
