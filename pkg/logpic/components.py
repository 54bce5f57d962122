"""
Finite models of the smooth curves sitting at the vertices of a complex.

A genus-0 component is a projective line: divisor classes are just degrees.
A genus-1 component models its degree-zero Picard group by a finite abelian
group ``Γ`` given by invariant factors; every roster point carries a class in
``Γ`` and every element of ``Γ`` is the class of some point. Classes are
pairs ``(degree, torsion)``.

Components of genus two or more can be described (they matter for genus
bookkeeping and for the groupoid correspondence) but every exact rank
operation refuses them.

Example:
    >>> from logpic.components import *  # NOQA
    >>> E = ComponentModel.elliptic([5])
    >>> E.class_of({'p2': 1, 'p3': 1})
    ComponentClass(degree=2, torsion=(0,))
    >>> E.h0(ComponentClass(0, (0,))), E.h0(ComponentClass(0, (1,)))
    (1, 0)
    >>> P = ComponentModel.rational(['x', 'y'])
    >>> P.class_of({'x': 2, 'y': -1})
    ComponentClass(degree=1, torsion=())
    >>> P.h0(ComponentClass(3, ()))
    4
"""
from __future__ import annotations

from typing import Iterator, Mapping, Sequence

import msgspec

from logpic.exceptions import InputError, UnsupportedModelError
from logpic.utils.util_iterable import group_elements


class AbelianGroup(msgspec.Struct, frozen=True):
    """
    ``Z/n1 x Z/n2 x ...`` with each factor dividing the next.

    Example:
        >>> from logpic.components import AbelianGroup
        >>> G = AbelianGroup((2, 4))
        >>> G.order
        8
        >>> G.add((1, 3), (1, 2))
        (0, 1)
        >>> G.neg((1, 3))
        (1, 1)
    """
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        for n in self.factors:
            if n < 2:
                raise InputError(f'invariant factors must be >= 2, got {list(self.factors)}')
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise InputError(
                    f'invariant factors must divide each other, got {list(self.factors)}')

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != len(self.factors):
            raise InputError(
                f'element {list(x)} does not match invariant factors {list(self.factors)}')
        return tuple(int(a) % n for a, n in zip(x, self.factors))

    def add(self, x, y) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def sub(self, x, y) -> tuple[int, ...]:
        return self.reduce([a - b for a, b in zip(x, y)])

    def neg(self, x) -> tuple[int, ...]:
        return self.reduce([-a for a in x])

    def scale(self, k: int, x) -> tuple[int, ...]:
        return self.reduce([k * a for a in x])

    def elements(self) -> Iterator[tuple[int, ...]]:
        return group_elements(self.factors)

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == len(self.factors) and all(
            0 <= a < n for a, n in zip(x, self.factors))


class ComponentClass(msgspec.Struct, frozen=True):
    """
    A divisor class on one component: its degree and its torsion part.
    """
    degree: int
    torsion: tuple[int, ...] = ()


class ComponentModel(msgspec.Struct, frozen=True):
    """
    Args:
        genus (int): 0, 1, or larger for data-only components
        group (AbelianGroup): the model of ``Pic^0`` (trivial unless genus 1)
        points (Dict[str, Tuple[int, ...]]): roster of named points and
            their classes in ``group``
    """
    genus: int
    group: AbelianGroup = msgspec.field(default_factory=AbelianGroup)
    points: dict[str, tuple[int, ...]] = msgspec.field(default_factory=dict)

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f'component genus must be >= 0, got {self.genus}')
        if self.genus != 1 and self.group.factors:
            raise InputError('only genus-1 components carry a torsion group')
        for name, cls in self.points.items():
            if not self.group.contains(cls):
                raise InputError(
                    f'point {name!r} has class {list(cls)} outside the group '
                    f'{list(self.group.factors)}')
        if self.genus == 1:
            if self.group.order < 2:
                raise InputError(
                    'a genus-1 component needs a group of order >= 2')
            covered = set(self.points.values())
            missing = [x for x in self.group.elements() if x not in covered]
            if missing:
                raise InputError(
                    f'genus-1 roster must realize every group element; '
                    f'missing {list(missing[0])}')

    @classmethod
    def rational(cls, points: Sequence[str] = ()) -> ComponentModel:
        return cls(genus=0, points={p: () for p in points})

    @classmethod
    def elliptic(cls, factors: Sequence[int], names: Mapping[tuple, str] | None = None) -> ComponentModel:
        """
        A genus-1 model with one point per group element.

        Default names are ``p{i}`` for cyclic groups and ``p{i}_{j}...`` for
        products.

        Example:
            >>> from logpic.components import *  # NOQA
            >>> sorted(ComponentModel.elliptic([2, 2]).points)
            ['p0_0', 'p0_1', 'p1_0', 'p1_1']
        """
        group = AbelianGroup(tuple(int(f) for f in factors))
        points = {}
        for x in group.elements():
            if names is not None and x in names:
                name = names[x]
            else:
                name = 'p' + '_'.join(str(a) for a in x)
            points[name] = x
        return cls(genus=1, group=group, points=points)

    @classmethod
    def higher_genus(cls, genus: int, points: Sequence[str] = ()) -> ComponentModel:
        return cls(genus=genus, points={p: () for p in points})

    def with_points(self, extra: Sequence[str]) -> ComponentModel:
        """Add new points carrying the trivial class."""
        points = dict(self.points)
        for p in extra:
            if p in points:
                raise InputError(f'point {p!r} already exists')
            points[p] = self.group.zero()
        return ComponentModel(genus=self.genus, group=self.group, points=points)

    def __json__(self) -> dict:
        return {
            'genus': self.genus,
            'group': list(self.group.factors),
            'points': [{'id': p, 'class': list(c)} for p, c in sorted(self.points.items())],
        }

    # --- classes ---

    def require_exact(self) -> None:
        if self.genus >= 2:
            raise UnsupportedModelError(
                f'exact rank computations only support components of genus <= 1 '
                f'(got genus {self.genus})')

    def point_class(self, name: str) -> ComponentClass:
        try:
            return ComponentClass(1, self.points[name])
        except KeyError:
            raise InputError(f'unknown point {name!r}') from None

    def zero(self) -> ComponentClass:
        return ComponentClass(0, self.group.zero())

    def add(self, a: ComponentClass, b: ComponentClass) -> ComponentClass:
        return ComponentClass(a.degree + b.degree, self.group.add(a.torsion, b.torsion))

    def sub(self, a: ComponentClass, b: ComponentClass) -> ComponentClass:
        return ComponentClass(a.degree - b.degree, self.group.sub(a.torsion, b.torsion))

    def neg(self, a: ComponentClass) -> ComponentClass:
        return ComponentClass(-a.degree, self.group.neg(a.torsion))

    def normalize(self, c: ComponentClass) -> ComponentClass:
        return ComponentClass(int(c.degree), self.group.reduce(c.torsion))

    def class_of(self, divisor: Mapping[str, int]) -> ComponentClass:
        """
        Degree and torsion of a divisor given as ``{point: multiplicity}``.

        Example:
            >>> from logpic.components import *  # NOQA
            >>> ComponentModel.elliptic([5]).class_of({})
            ComponentClass(degree=0, torsion=(0,))
        """
        total = self.zero()
        for name, mult in divisor.items():
            pc = self.point_class(name)
            total = self.add(total, ComponentClass(int(mult), self.group.scale(int(mult), pc.torsion)))
        return total

    def h0(self, c: ComponentClass) -> int:
        """
        Dimension of the space of sections of a class.

        Example:
            >>> from logpic.components import *  # NOQA
            >>> ComponentModel.elliptic([3]).h0(ComponentClass(2, (1,)))
            2
            >>> ComponentModel.rational().h0(ComponentClass(-1))
            0
        """
        self.require_exact()
        if self.genus == 0:
            return max(c.degree + 1, 0)
        if c.degree < 0:
            return 0
        if c.degree == 0:
            return 1 if not any(self.group.reduce(c.torsion)) else 0
        return c.degree

    def is_effective_class(self, c: ComponentClass) -> bool:
        return self.h0(c) >= 1

    def canonical_class(self) -> ComponentClass:
        """
        Example:
            >>> from logpic.components import *  # NOQA
            >>> ComponentModel.rational().canonical_class()
            ComponentClass(degree=-2, torsion=())
            >>> ComponentModel.elliptic([5]).canonical_class()
            ComponentClass(degree=0, torsion=(0,))
        """
        self.require_exact()
        return ComponentClass(2 * self.genus - 2, self.group.zero())

    def effective_classes(self, degree: int) -> Iterator[ComponentClass]:
        """
        Every class of the given degree that has an effective representative.
        """
        self.require_exact()
        if degree < 0:
            return
        if degree == 0 or self.genus == 0:
            yield ComponentClass(degree, self.group.zero())
            return
        for x in self.group.elements():
            yield ComponentClass(degree, x)

    def classes(self, degree: int) -> Iterator[ComponentClass]:
        """Every class of the given degree."""
        for x in self.group.elements():
            yield ComponentClass(degree, x)

    def point_with_class(self, torsion: Sequence[int]) -> str:
        """The least point name carrying the given class."""
        torsion = self.group.reduce(torsion)
        for name in sorted(self.points):
            if self.points[name] == torsion:
                return name
        raise InputError(f'no roster point has class {list(torsion)}')

    def representative(self, c: ComponentClass, avoid: Sequence[str] = ()) -> dict[str, int]:
        """
        Some divisor ``{point: mult}`` in the class ``c``.

        Genus 0 uses a point outside ``avoid`` when one exists. Genus 1 uses
        ``degree - 1`` copies of the zero point plus the point whose class is
        the torsion.
        """
        self.require_exact()
        if self.genus == 0:
            names = sorted(self.points)
            if not names:
                raise InputError('cannot represent a class on a component with no points')
            free = [p for p in names if p not in avoid] or names
            return {free[0]: c.degree} if c.degree else {}
        zero_pt = self.point_with_class(self.group.zero())
        t_pt = self.point_with_class(c.torsion)
        rep: dict[str, int] = {}
        rep[zero_pt] = rep.get(zero_pt, 0) + c.degree - 1
        rep[t_pt] = rep.get(t_pt, 0) + 1
        return {k: v for k, v in rep.items() if v}
