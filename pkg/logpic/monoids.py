"""
Free sharp monoids ``N^k`` used as edge-length monoids.

Only free monoids are modeled. An element is a vector of ``k`` non-negative
integers and a homomorphism ``N^k -> N^l`` is an ``l x k`` matrix with
non-negative entries.

Example:
    >>> from logpic.monoids import *  # NOQA
    >>> P = SharpMonoid(2)
    >>> a = P.element([1, 0])
    >>> b = P.element([0, 2])
    >>> (a + b).coords
    (1, 2)
    >>> h = MonoidHom.from_rows([[1, 1]])
    >>> hom_apply(h, a + b).coords
    (3,)
"""
from __future__ import annotations

from typing import Sequence

import msgspec

from logpic.exceptions import InputError, InvalidNodeDatumError


class SharpMonoid(msgspec.Struct, frozen=True):
    """
    The free commutative monoid on ``rank`` generators.
    """
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise InputError(f'monoid rank must be >= 0, got {self.rank}')

    def element(self, coords: Sequence[int]) -> MonoidElement:
        elem = MonoidElement(tuple(int(c) for c in coords))
        if len(elem) != self.rank:
            raise InputError(
                f'element {list(coords)} does not live in N^{self.rank}')
        return elem

    def zero(self) -> MonoidElement:
        return MonoidElement((0,) * self.rank)

    def generator(self, i: int) -> MonoidElement:
        return MonoidElement(tuple(int(j == i) for j in range(self.rank)))

    def contains(self, elem: MonoidElement) -> bool:
        return len(elem) == self.rank


class MonoidElement(msgspec.Struct, frozen=True):
    """
    Element of ``N^k``.

    Example:
        >>> from logpic.monoids import MonoidElement
        >>> MonoidElement((0, 0)).is_zero()
        True
        >>> MonoidElement((1,)) + MonoidElement((2,))
        MonoidElement(coords=(3,))
        >>> MonoidElement((-1,))
        Traceback (most recent call last):
        ...
        logpic.exceptions.InputError: monoid coordinates must be non-negative, got [-1]
    """
    coords: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coords):
            raise InputError(
                f'monoid coordinates must be non-negative, got {list(self.coords)}')

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: MonoidElement) -> MonoidElement:
        if len(other) != len(self):
            raise InputError('cannot add elements of different monoids')
        return MonoidElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    @classmethod
    def coerce(cls, data) -> MonoidElement:
        if isinstance(data, cls):
            return data
        if isinstance(data, int):
            return cls((data,))
        return cls(tuple(int(c) for c in data))


class MonoidHom(msgspec.Struct, frozen=True):
    """
    Monoid homomorphism ``N^source -> N^target`` given by a matrix with
    ``target`` rows and ``source`` columns.
    """
    source: int
    target: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.target or any(len(r) != self.source for r in self.matrix):
            raise InputError(
                f'hom matrix does not have shape {self.target}x{self.source}')
        if any(x < 0 for r in self.matrix for x in r):
            raise InputError('hom matrix entries must be non-negative')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], source: int | None = None) -> MonoidHom:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if source is None:
            source = len(rows[0]) if rows else 0
        return cls(source, len(rows), rows)

    @classmethod
    def from_images(cls, images: Sequence[MonoidElement], target: int) -> MonoidHom:
        """
        The hom sending the i-th generator to ``images[i]``.

        Example:
            >>> from logpic.monoids import *  # NOQA
            >>> h = MonoidHom.from_images([MonoidElement((1, 0)), MonoidElement((0, 1)), MonoidElement((1, 1))], target=2)
            >>> h.matrix
            ((1, 0, 1), (0, 1, 1))
        """
        for img in images:
            if len(img) != target:
                raise InputError(f'image {img.coords} is not in N^{target}')
        rows = tuple(tuple(img.coords[i] for img in images) for i in range(target))
        return cls(len(images), target, rows)

    @classmethod
    def zero(cls, source: int, target: int) -> MonoidHom:
        return cls(source, target, tuple((0,) * source for _ in range(target)))

    def images(self) -> list[MonoidElement]:
        return [MonoidElement(tuple(r[j] for r in self.matrix))
                for j in range(self.source)]


class NodeMonoidPresentation(msgspec.Struct, frozen=True):
    """
    Descriptor of the characteristic monoid ``N^2 (+)_N P`` at a node, where
    ``N -> N^2`` is the diagonal and ``N -> P`` sends ``1`` to ``base``.
    """
    base: MonoidElement
    monoid_rank: int

    @property
    def generators(self) -> list[str]:
        return ['alpha', 'beta'] + [f'p{i}' for i in range(self.monoid_rank)]

    @property
    def relation(self) -> str:
        terms = ' + '.join(f'{c}*p{i}' for i, c in enumerate(self.base.coords) if c)
        return f'alpha + beta = {terms}'

    def is_semistable(self) -> bool:
        return is_unit(self.base)


def hom_apply(h: MonoidHom, m: MonoidElement) -> MonoidElement:
    """
    Apply a monoid homomorphism.

    Example:
        >>> from logpic.monoids import *  # NOQA
        >>> hom_apply(MonoidHom.from_rows([[1, 1]]), MonoidElement((2, 3)))
        MonoidElement(coords=(5,))
        >>> hom_apply(MonoidHom.zero(2, 1), MonoidElement((2, 3)))
        MonoidElement(coords=(0,))
    """
    if len(m) != h.source:
        raise InputError(
            f'element of N^{len(m)} given to a hom from N^{h.source}')
    return MonoidElement(tuple(
        sum(a * b for a, b in zip(row, m.coords)) for row in h.matrix))


def node_presentation(p: MonoidElement) -> NodeMonoidPresentation:
    """
    Example:
        >>> from logpic.monoids import *  # NOQA
        >>> pres = node_presentation(MonoidElement((1,)))
        >>> pres.relation
        'alpha + beta = 1*p0'
        >>> pres.is_semistable()
        True
        >>> node_presentation(MonoidElement((0, 0)))
        Traceback (most recent call last):
        ...
        logpic.exceptions.InvalidNodeDatumError: node length p_e must be non-zero
    """
    if p.is_zero():
        raise InvalidNodeDatumError('node length p_e must be non-zero')
    return NodeMonoidPresentation(base=p, monoid_rank=len(p))


def is_unit(p: MonoidElement) -> bool:
    """
    True iff ``p`` is the generator of ``N``.

    Example:
        >>> from logpic.monoids import *  # NOQA
        >>> is_unit(MonoidElement((1,))), is_unit(MonoidElement((2,)))
        (True, False)
    """
    if len(p) != 1:
        raise InputError(
            'semistability is only defined over the standard log point (N)')
    return p.coords[0] == 1
