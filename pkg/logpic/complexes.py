"""
Metrized curve complexes: a graph, a component model per vertex, and a
choice of distinct attachment points for the half-edges at each vertex.

Divisors are collections of point divisors on the components. Two divisors
are equivalent when they differ by componentwise linear equivalence and
integer combinations of the firing vectors ``F_v``. Firing ``v`` removes the
attachment points of ``v`` from ``C_v`` and adds the opposite attachment
point on each neighbor, so the degree part of ``F_v`` is ``-L[:, v]``.

Ranks quantify over effective test classes and are computed after loops are
subdivided; :meth:`MetrizedComplex.rank_naive` keeps the literal
unsubdivided reading.

Example:
    >>> from logpic.complexes import *  # NOQA
    >>> C = MetrizedComplex.demo('CPX-ELL5')
    >>> C.genus
    1
    >>> c = C.class_of({'v': {'p0': 1, 'p1': 1}})
    >>> C.rank(c)
    1
    >>> L = MetrizedComplex.demo('CPX-LOOP-RAT')
    >>> y = L.class_of({'v': {'y': 1}})
    >>> L.rank(y), L.rank_naive(y)
    (0, 1)
"""
from __future__ import annotations

import itertools as it
from functools import cached_property
from typing import Iterable, Mapping

import msgspec
import ubelt as ub
from loguru import logger

from logpic.components import AbelianGroup, ComponentClass, ComponentModel
from logpic.divisors import GraphDivisor, reduced_divisors
from logpic.exceptions import InputError, UnsupportedModelError
from logpic.graph import Edge, GraphAutomorphism, Multigraph, Vertex, loop_midpoint_id
from logpic.linalg import integer_solve
from logpic.utils.util_iterable import compositions


class ComplexClass(msgspec.Struct, frozen=True):
    """
    One :class:`ComponentClass` per vertex, in vertex id order.
    """
    parts: tuple[ComponentClass, ...]

    def mdeg(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.parts)

    def degree(self) -> int:
        return sum(p.degree for p in self.parts)


class ComplexDivisor(msgspec.Struct, frozen=True):
    """
    ``{vertex: {point: multiplicity}}``. Omitted vertices and points mean 0.
    """
    parts: dict[str, dict[str, int]] = msgspec.field(default_factory=dict)

    def __add__(self, other: ComplexDivisor) -> ComplexDivisor:
        parts = {v: dict(d) for v, d in self.parts.items()}
        for v, d in other.parts.items():
            bucket = parts.setdefault(v, {})
            for p, m in d.items():
                bucket[p] = bucket.get(p, 0) + m
        return ComplexDivisor(parts)


class ComplexAutomorphism(msgspec.Struct, frozen=True):
    """
    A graph automorphism together with a point bijection
    ``roster(v) -> roster(graph.vertex_map[v])`` for every vertex.
    """
    graph: GraphAutomorphism
    point_maps: dict[str, dict[str, str]]


class MetrizedComplex(ub.NiceRepr):
    """
    Args:
        graph (Multigraph): underlying graph; vertex weights must equal the
            component genera
        components (Dict[str, ComponentModel]): model per vertex
        attach (Dict[str, str]): attachment point of every half-edge
        marks (Iterable[Tuple[str, str]]): marked ``(vertex, point)`` pairs
        validate (bool): raise on invalid input

    Example:
        >>> from logpic.complexes import *  # NOQA
        >>> C = MetrizedComplex.demo('CPX-C3-RAT')
        >>> print(C)
        <MetrizedComplex(V=3, E=3, genus=1, marks=0)>
        >>> C.firing_vectors()['v1'].mdeg()
        (-2, 1, 1)
    """

    def __init__(self, graph: Multigraph, components: Mapping[str, ComponentModel],
                 attach: Mapping[str, str], marks: Iterable = (), validate: bool = True):
        self.graph = graph
        self.components = dict(sorted(components.items()))
        self.attach = dict(sorted(attach.items()))
        self.marks = tuple(tuple(m) for m in marks)
        self._memo: dict = {}
        if validate:
            self.validate()

    def __nice__(self):
        return (f'V={len(self.graph.vertices)}, E={len(self.graph.edges)}, '
                f'genus={self.genus}, marks={len(self.marks)}')

    @classmethod
    def rational(cls, graph: Multigraph, extra_points: Mapping[str, Iterable[str]] | None = None,
                 marks: Iterable = ()) -> MetrizedComplex:
        """
        All components are projective lines whose rosters are the half-edge
        ids at the vertex plus any ``extra_points``; half-edges attach to the
        point of the same name.
        """
        extra_points = extra_points or {}
        components = {}
        for v in graph.vertex_ids:
            names = graph.halves_at(v) + list(extra_points.get(v, []))
            components[v] = ComponentModel.rational(names)
        attach = {h: h for h in graph.half_edges}
        return cls(graph, components, attach, marks)

    @classmethod
    def coerce(cls, data) -> MetrizedComplex:
        if isinstance(data, cls):
            return data
        from logpic import schema
        if isinstance(data, dict):
            return schema.ComplexSchema.model_validate(data).build()
        if isinstance(data, str) and not data.endswith('.json'):
            return cls.demo(data)
        return schema.load_complex(data)

    @classmethod
    def demo(cls, key: str = 'CPX-C3-RAT') -> MetrizedComplex:
        from logpic.demo import fixtures
        return fixtures.complex_fixture(key)

    def __json__(self) -> dict:
        data = self.graph.__json__()
        data['components'] = {v: m.__json__() for v, m in self.components.items()}
        data['attach'] = dict(self.attach)
        data['marks'] = [list(m) for m in self.marks]
        return data

    # --- structure ---

    def validate(self) -> MetrizedComplex:
        """
        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> from logpic.components import ComponentModel
            >>> G = Multigraph.demo('LOOP1')
            >>> MetrizedComplex(G, {'v': ComponentModel.rational(['x'])},
            >>>                 {'l:0': 'x', 'l:1': 'x'})
            Traceback (most recent call last):
            ...
            logpic.exceptions.InputError: duplicate attachment point 'x' at vertex 'v' (at /attach/l:1)
        """
        G = self.graph
        if set(self.components) != set(G.vertex_ids):
            missing = sorted(set(G.vertex_ids) - set(self.components))
            extra = sorted(set(self.components) - set(G.vertex_ids))
            raise InputError(
                f'components must be given for exactly the vertices '
                f'(missing {missing}, unknown {extra})', '/components')
        for idx, v in enumerate(G.vertex_ids):
            if G.weights[v] != self.components[v].genus:
                raise InputError(
                    f'vertex {v!r} has weight {G.weights[v]} but its component '
                    f'has genus {self.components[v].genus}', f'/components/{v}/genus')
        unknown = sorted(set(self.attach) - set(G.half_edges))
        if unknown:
            raise InputError(f'attachment for unknown half-edge {unknown[0]!r}', f'/attach/{unknown[0]}')
        missing = sorted(set(G.half_edges) - set(self.attach))
        if missing:
            raise InputError(
                f'half-edge bijection is not total: {missing[0]!r} has no '
                f'attachment point', '/attach')
        used = {}
        for h, p in self.attach.items():
            v = G.half_edges[h]
            if p not in self.components[v].points:
                raise InputError(
                    f'attachment point {p!r} of {h!r} is not on the roster of {v!r}',
                    f'/attach/{h}')
            if (v, p) in used:
                raise InputError(
                    f'duplicate attachment point {p!r} at vertex {v!r}', f'/attach/{h}')
            used[(v, p)] = h
        seen = set()
        for idx, mark in enumerate(self.marks):
            if len(mark) != 2:
                raise InputError('marks are [vertex, point] pairs', f'/marks/{idx}')
            v, p = mark
            if v not in self.components:
                raise InputError(f'mark on unknown vertex {v!r}', f'/marks/{idx}/0')
            if p not in self.components[v].points:
                raise InputError(f'mark {p!r} is not on the roster of {v!r}', f'/marks/{idx}/1')
            if (v, p) in used:
                raise InputError(
                    f'marking {p!r} collides with an attachment point at {v!r}', f'/marks/{idx}')
            if (v, p) in seen:
                raise InputError(f'marking {p!r} at {v!r} is repeated', f'/marks/{idx}')
            seen.add((v, p))
        return self

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return self.graph.vertex_ids

    @cached_property
    def models(self) -> tuple[ComponentModel, ...]:
        return tuple(self.components[v] for v in self.vertex_ids)

    @property
    def genus(self) -> int:
        """
        ``b1(G) + sum of component genera``.

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> MetrizedComplex.demo('CPX-LOOP-RAT').genus
            1
            >>> MetrizedComplex.demo('CPX-B2-RAT').genus
            1
        """
        return self.graph.b1 + sum(m.genus for m in self.components.values())

    def attachment_points(self, v: str) -> list[str]:
        return [self.attach[h] for h in self.graph.halves_at(v)]

    def is_all_rational(self) -> bool:
        return all(m.genus == 0 for m in self.components.values())

    def require_exact(self) -> None:
        for m in self.models:
            m.require_exact()

    def require_unmarked(self) -> None:
        if self.marks:
            raise UnsupportedModelError(
                'rank computations do not support marked points (legs)')

    # --- classes ---

    def zero_class(self) -> ComplexClass:
        return ComplexClass(tuple(m.zero() for m in self.models))

    def add(self, a: ComplexClass, b: ComplexClass) -> ComplexClass:
        return ComplexClass(tuple(m.add(x, y) for m, x, y in zip(self.models, a.parts, b.parts)))

    def sub(self, a: ComplexClass, b: ComplexClass) -> ComplexClass:
        return ComplexClass(tuple(m.sub(x, y) for m, x, y in zip(self.models, a.parts, b.parts)))

    def neg(self, a: ComplexClass) -> ComplexClass:
        return ComplexClass(tuple(m.neg(x) for m, x in zip(self.models, a.parts)))

    def scale(self, k: int, a: ComplexClass) -> ComplexClass:
        return ComplexClass(tuple(
            ComponentClass(k * x.degree, m.group.scale(k, x.torsion))
            for m, x in zip(self.models, a.parts)))

    def class_from_dict(self, data: Mapping[str, ComponentClass]) -> ComplexClass:
        parts = []
        for v, m in zip(self.vertex_ids, self.models):
            parts.append(m.normalize(data[v]) if v in data else m.zero())
        unknown = sorted(set(data) - set(self.vertex_ids))
        if unknown:
            raise InputError(f'class given on unknown vertex {unknown[0]!r}')
        return ComplexClass(tuple(parts))

    def class_to_dict(self, c: ComplexClass) -> dict[str, dict]:
        return {v: {'degree': p.degree, 'torsion': list(p.torsion)}
                for v, p in zip(self.vertex_ids, c.parts)}

    def class_of(self, D) -> ComplexClass:
        """
        Componentwise class of a divisor ``{vertex: {point: mult}}``.

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-ELL5')
            >>> C.class_of({'v': {'p1': 1, 'p4': 1}})
            ComplexClass(parts=(ComponentClass(degree=2, torsion=(0,)),))
            >>> C.class_of({}) == C.zero_class()
            True
        """
        if isinstance(D, ComplexClass):
            return D
        if isinstance(D, ComplexDivisor):
            D = D.parts
        for v in D:
            if v not in self.components:
                raise InputError(f'divisor on unknown vertex {v!r}')
        return ComplexClass(tuple(
            m.class_of(D.get(v, {})) for v, m in zip(self.vertex_ids, self.models)))

    def graph_divisor(self, c) -> GraphDivisor:
        """The induced graph divisor ``D_G`` (the multidegree)."""
        c = self.class_of(c)
        return GraphDivisor(self.graph, c.mdeg())

    def firing_vectors(self) -> dict[str, ComplexClass]:
        """
        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-LOOP-RAT')
            >>> C.firing_vectors()['v'] == C.zero_class()
            True
        """
        return self._firing_vectors

    @cached_property
    def _firing_vectors(self) -> dict[str, ComplexClass]:
        G = self.graph
        vectors = {}
        for v in self.vertex_ids:
            acc = {w: self.components[w].zero() for w in self.vertex_ids}
            for e in G.edges:
                if e.is_loop:
                    continue
                for (h, x), (h2, y) in [(e.halves[0], e.halves[1]), (e.halves[1], e.halves[0])]:
                    if x != v:
                        continue
                    mv, my = self.components[v], self.components[y]
                    acc[v] = mv.sub(acc[v], mv.point_class(self.attach[h]))
                    acc[y] = my.add(acc[y], my.point_class(self.attach[h2]))
            vectors[v] = self.class_from_dict(acc)
        total = self.zero_class()
        for vec in vectors.values():
            total = self.add(total, vec)
        if total != self.zero_class():
            raise AssertionError('firing vectors do not sum to zero')
        return vectors

    def script_shift(self, x) -> ComplexClass:
        """``sum_v x_v F_v``."""
        total = self.zero_class()
        F = self.firing_vectors()
        for v, k in zip(self.vertex_ids, x):
            if k:
                total = self.add(total, self.scale(k, F[v]))
        return total

    def class_key(self, c) -> tuple:
        """
        Hashable key that two classes share iff they are equivalent.

        The multidegree is replaced by its reduced form and the torsion is
        moved along the same firing script.
        """
        c = self.class_of(c)
        R, script = GraphDivisor(self.graph, c.mdeg()).q_reduce_with_script()
        shifted = self.add(c, self.script_shift(script))
        if shifted.mdeg() != R.coeffs:
            raise AssertionError('firing script does not reproduce the reduced multidegree')
        return (R.coeffs, tuple(p.torsion for p in shifted.parts))

    def class_from_key(self, key: tuple) -> ComplexClass:
        mdeg, torsions = key
        return ComplexClass(tuple(ComponentClass(d, t) for d, t in zip(mdeg, torsions)))

    def is_equivalent(self, c1, c2) -> bool:
        """
        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-ELL5')
            >>> C.is_equivalent(C.class_of({'v': {'p1': 1}}), C.class_of({'v': {'p2': 1}}))
            False
            >>> C.is_equivalent(C.class_of({'v': {'p1': 1, 'p4': 1}}), C.class_of({'v': {'p2': 1, 'p3': 1}}))
            True
        """
        diff = self.sub(self.class_of(c1), self.class_of(c2))
        x = integer_solve(self.graph.laplacian(), [-d for d in diff.mdeg()])
        if x is None:
            return False
        residual = self.sub(diff, self.script_shift(x))
        if any(p.degree for p in residual.parts):
            raise AssertionError('integer solution does not match the multidegree')
        shifted = self.sub(diff, self.script_shift([k + 1 for k in x]))
        if shifted != residual:
            raise AssertionError('torsion residual depends on the choice of solution')
        return all(not any(p.torsion) for p in residual.parts)

    def _effective_table(self, degree: int) -> dict[tuple, list[tuple]]:
        """
        For each reduced multidegree, the effective multidegrees in its class
        with the torsion shift turning the reduced class into that
        multidegree.
        """
        key = ('effective', degree)
        if key in self._memo:
            return self._memo[key]
        table: dict[tuple, list[tuple]] = {}
        n = len(self.vertex_ids)
        for m in compositions(degree, n):
            R, script = GraphDivisor(self.graph, m).q_reduce_with_script()
            shift = self.neg(self.script_shift(script))
            table.setdefault(R.coeffs, []).append((m, tuple(p.torsion for p in shift.parts)))
        logger.debug('effective table for degree {} on {} has {} entries', degree, self, len(table))
        self._memo[key] = table
        return table

    def has_effective_rep(self, c) -> bool:
        """
        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-ELL5')
            >>> from logpic.components import ComponentClass
            >>> C.has_effective_rep(C.class_from_dict({'v': ComponentClass(0, (3,))}))
            False
        """
        self.require_exact()
        c = self.class_of(c)
        degree = c.degree()
        if degree < 0:
            return False
        mdeg, torsions = self.class_key(c)
        for m, shift in self._effective_table(degree).get(mdeg, []):
            ok = True
            for model, mv, t, s in zip(self.models, m, torsions, shift):
                if model.genus == 1 and mv == 0 and any(model.group.add(t, s)):
                    ok = False
                    break
            if ok:
                return True
        return False

    def unit_test_classes(self) -> list[ComplexClass]:
        """Effective classes of degree one."""
        units = []
        for i, m in enumerate(self.models):
            for cc in m.effective_classes(1):
                parts = [mm.zero() for mm in self.models]
                parts[i] = cc
                units.append(ComplexClass(tuple(parts)))
        return units

    def _rank_here(self, c: ComplexClass) -> int:
        key = self.class_key(c)
        memo = self._memo.setdefault('rank', {})
        if key in memo:
            return memo[key]
        c = self.class_from_key(key)
        if not self.has_effective_rep(c):
            result = -1
        else:
            result = None
            for u in self._units:
                r = self._rank_here(self.sub(c, u))
                if result is None or r < result:
                    result = r
                if result == -1:
                    break
            result += 1
        memo[key] = result
        return result

    @cached_property
    def _units(self) -> list[ComplexClass]:
        return self.unit_test_classes()

    def rank_naive(self, c) -> int:
        """
        Rank without loop subdivision: test classes live on the components
        of this complex only.
        """
        self.require_exact()
        self.require_unmarked()
        return self._rank_here(self.class_of(c))

    def rank(self, c) -> int:
        """
        Rank over effective test classes, computed on the loop-subdivided
        complex.

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-C3-RAT')
            >>> C.rank(C.class_from_dict({'v1': ComponentClass(1)}))
            0
        """
        self.require_exact()
        self.require_unmarked()
        c = self.class_of(c)
        sub, _ = self.subdivide_loops()
        return sub._rank_here(self.pushforward_class(sub, c))

    def pushforward_class(self, sub: MetrizedComplex, c: ComplexClass) -> ComplexClass:
        if sub is self:
            return c
        return sub.class_from_dict(dict(zip(self.vertex_ids, c.parts)))

    def classes_of_degree(self, degree: int) -> list[ComplexClass]:
        """
        One representative per class of the given degree.

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> len(MetrizedComplex.demo('CPX-ELL5').classes_of_degree(2))
            5
            >>> len(MetrizedComplex.demo('CPX-C3-RAT').classes_of_degree(0))
            3
        """
        found = []
        for R in reduced_divisors(self.graph, degree):
            for tors in it.product(*[list(m.group.elements()) for m in self.models]):
                found.append(self.class_from_key((R.coeffs, tors)))
        return found

    def canonical(self) -> tuple[ComplexClass, ComplexDivisor | None]:
        """
        The canonical class ``sum_v (A_v + K_v)`` and, when every component
        admits one, a representative divisor.

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> K, rep = MetrizedComplex.demo('CPX-LOOP-RAT').canonical()
            >>> K.mdeg()
            (0,)
            >>> rep.parts
            {'v': {'x1': 1, 'x2': 1, 'y': -2}}
        """
        parts = []
        rep = {}
        for v, m in zip(self.vertex_ids, self.models):
            A = self.attachment_points(v)
            torsion = m.group.zero()
            for p in A:
                torsion = m.group.add(torsion, m.points[p])
            parts.append(ComponentClass(len(A) + 2 * m.genus - 2, torsion))
            if rep is not None:
                try:
                    K_rep = m.representative(m.canonical_class(), avoid=A)
                except (InputError, UnsupportedModelError):
                    rep = None
                    continue
                local = {p: 1 for p in A}
                for p, k in K_rep.items():
                    local[p] = local.get(p, 0) + k
                rep[v] = {p: k for p, k in sorted(local.items()) if k}
        return ComplexClass(tuple(parts)), (None if rep is None else ComplexDivisor(rep))

    def canonical_class(self) -> ComplexClass:
        return self.canonical()[0]

    # --- constructions ---

    def subdivide_loops(self) -> tuple[MetrizedComplex, dict[str, str]]:
        """
        Each loop ``e`` gains a rational midpoint component ``e/mid`` whose
        two roster points are the attachments of the new half-edges.

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> sub, _ = MetrizedComplex.demo('CPX-LOOP-RAT').subdivide_loops()
            >>> sub.vertex_ids, sub.genus
            (('l/mid', 'v'), 1)
        """
        key = 'subdivided'
        if key in self._memo:
            return self._memo[key]
        G2, mapping = self.graph.subdivide_loops()
        if G2 is self.graph:
            result = (self, mapping)
        else:
            components = dict(self.components)
            attach = dict(self.attach)
            for e in self.graph.loops():
                mid = loop_midpoint_id(e.id)
                halves = [f'{mid}:0', f'{mid}:1']
                components[mid] = ComponentModel.rational(halves)
                for h in halves:
                    attach[h] = h
            result = (MetrizedComplex(G2, components, attach, self.marks), mapping)
        self._memo[key] = result
        return result

    # --- automorphisms ---

    def check_automorphism(self, phi: ComplexAutomorphism) -> list[str]:
        """
        Return the list of violated conditions (empty when ``phi`` is an
        automorphism).

        Example:
            >>> from logpic.complexes import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-B2-RAT')
            >>> C.check_automorphism(C.identity_automorphism())
            []
        """
        G = self.graph
        gmap = phi.graph
        problems = []
        V = set(G.vertex_ids)
        if set(gmap.vertex_map) != V or set(gmap.vertex_map.values()) != V:
            problems.append('vertex map: not a bijection of the vertices')
            return problems
        E = set(G.edge_ids)
        if set(gmap.edge_map) != E or set(gmap.edge_map.values()) != E:
            problems.append('edge map: not a bijection of the edges')
            return problems
        H = set(G.half_edges)
        if set(gmap.half_edge_map) != H or set(gmap.half_edge_map.values()) != H:
            problems.append('half-edge map: not a bijection of the half-edges')
            return problems
        for e in G.edges:
            img = G.edge(gmap.edge_map[e.id])
            if {gmap.half_edge_map[h] for h in e.half_ids} != set(img.half_ids):
                problems.append(f'half-edge map: halves of {e.id!r} do not map to halves of {img.id!r}')
            if e.length != img.length:
                problems.append(f'lengths: d({e.id}) != d({img.id})')
        for h, v in G.half_edges.items():
            if G.half_edges[gmap.half_edge_map[h]] != gmap.vertex_map[v]:
                problems.append(f'half-edge map: {h!r} does not follow its vertex')
        for v in G.vertex_ids:
            w = gmap.vertex_map[v]
            mv, mw = self.components[v], self.components[w]
            if mv.genus != mw.genus or mv.group != mw.group:
                problems.append(f'weights: component {v!r} cannot map to {w!r}')
                continue
            pmap = phi.point_maps.get(v, {})
            if set(pmap) != set(mv.points) or set(pmap.values()) != set(mw.points):
                problems.append(f'point map: {v!r} -> {w!r} is not a bijection of rosters')
                continue
            if mv.genus == 1 and not _is_affine(mv, mw, pmap):
                problems.append(f'point map: {v!r} -> {w!r} is not a group isomorphism plus translation')
        if problems:
            return problems
        for h, p in self.attach.items():
            v = G.half_edges[h]
            if phi.point_maps[v][p] != self.attach[gmap.half_edge_map[h]]:
                problems.append(f'attachment compatibility: {h!r} at {v!r}')
        for v, p in self.marks:
            if gmap.vertex_map[v] != v or phi.point_maps[v][p] != p:
                problems.append(f'marks: marked point {p!r} on {v!r} is moved')
        return problems

    def identity_automorphism(self) -> ComplexAutomorphism:
        G = self.graph
        gid = GraphAutomorphism(
            {v: v for v in G.vertex_ids}, {e: e for e in G.edge_ids},
            {h: h for h in G.half_edges})
        return ComplexAutomorphism(gid, {v: {p: p for p in m.points}
                                         for v, m in self.components.items()})

    def lift_automorphism(self, gaut: GraphAutomorphism) -> ComplexAutomorphism | None:
        """
        Extend a graph automorphism to the complex, trying both orientations
        of every loop. Returns None when no extension exists.
        """
        G = self.graph
        loops = G.loops()
        for flips in it.product([False, True], repeat=len(loops)):
            hmap = dict(gaut.half_edge_map)
            for flip, e in zip(flips, loops):
                if flip:
                    a, b = e.half_ids
                    hmap[a], hmap[b] = gaut.half_edge_map[b], gaut.half_edge_map[a]
            candidate = GraphAutomorphism(gaut.vertex_map, gaut.edge_map, hmap)
            point_maps = {}
            for v in G.vertex_ids:
                pmap = self._lift_points(v, candidate)
                if pmap is None:
                    break
                point_maps[v] = pmap
            else:
                return ComplexAutomorphism(candidate, point_maps)
        return None

    def _lift_points(self, v: str, gaut: GraphAutomorphism) -> dict[str, str] | None:
        w = gaut.vertex_map[v]
        mv, mw = self.components[v], self.components[w]
        if mv.genus != mw.genus or mv.group != mw.group or len(mv.points) != len(mw.points):
            return None
        fixed = {}
        for h in self.graph.halves_at(v):
            fixed[self.attach[h]] = self.attach[gaut.half_edge_map[h]]
        for mv_, p in self.marks:
            if mv_ == v:
                if w != v:
                    return None
                fixed[p] = p
        if len(set(fixed.values())) != len(fixed):
            return None
        rest_src = sorted(p for p in mv.points if p not in fixed)
        rest_dst = sorted(p for p in mw.points if p not in set(fixed.values()))
        if mv.genus != 1:
            return {**fixed, **dict(zip(rest_src, rest_dst))}
        for alpha in _group_automorphisms(mv.group):
            for s in mw.group.elements():
                def image(x):
                    return mw.group.add(alpha[x], s)
                if any(mw.points[q] != image(mv.points[p]) for p, q in fixed.items()):
                    continue
                pmap = dict(fixed)
                ok = True
                for x in mv.group.elements():
                    src = [p for p in rest_src if mv.points[p] == x]
                    dst = [q for q in rest_dst if mw.points[q] == image(x)]
                    if len(src) != len(dst):
                        ok = False
                        break
                    pmap.update(zip(src, dst))
                if ok:
                    return pmap
        return None

    def automorphisms(self, max_vertices: int = 8) -> list[ComplexAutomorphism]:
        """One lift (when it exists) of every graph automorphism."""
        lifts = []
        for gaut in self.graph.automorphisms(max_vertices=max_vertices):
            lifted = self.lift_automorphism(gaut)
            if lifted is not None:
                lifts.append(lifted)
        return lifts

    def isomorphism_to(self, other: MetrizedComplex) -> dict[str, str] | None:
        """
        A half-edge renaming that turns ``self`` into ``other`` while fixing
        vertex, edge and point names, or None.
        """
        if self.vertex_ids != other.vertex_ids or self.graph.edge_ids != other.graph.edge_ids:
            return None
        if self.components != other.components or self.graph.weights != other.graph.weights:
            return None
        if sorted(self.marks) != sorted(other.marks):
            return None
        hmap = {}
        for e in self.graph.edges:
            f = other.graph.edge(e.id)
            if e.length != f.length:
                return None
            ours = [(v, self.attach[h]) for h, v in e.halves]
            theirs = [(v, other.attach[h]) for h, v in f.halves]
            if ours == theirs:
                hmap.update(zip(e.half_ids, f.half_ids))
            elif ours == theirs[::-1]:
                hmap.update(zip(e.half_ids, f.half_ids[::-1]))
            else:
                return None
        return hmap

    def isomorphic(self, other: MetrizedComplex) -> bool:
        return self.isomorphism_to(other) is not None


def _is_affine(mv: ComponentModel, mw: ComponentModel, pmap: Mapping[str, str]) -> bool:
    """
    Check that a point bijection between genus-1 models induces
    ``x -> alpha(x) + s`` on classes with ``alpha`` a group isomorphism.
    """
    induced = {}
    for p, q in pmap.items():
        x, y = mv.points[p], mw.points[q]
        if induced.setdefault(x, y) != y:
            return False
    G = mv.group
    s = induced[G.zero()]
    alpha = {x: mw.group.sub(y, s) for x, y in induced.items()}
    if len(set(alpha.values())) != len(alpha):
        return False
    for x in G.elements():
        for y in G.elements():
            if alpha[G.add(x, y)] != mw.group.add(alpha[x], alpha[y]):
                return False
    return True


def _group_automorphisms(group: AbelianGroup) -> list[dict]:
    """
    All automorphisms of a finite abelian group as lookup tables.

    Example:
        >>> from logpic.complexes import _group_automorphisms
        >>> from logpic.components import AbelianGroup
        >>> len(_group_automorphisms(AbelianGroup((5,))))
        4
        >>> len(_group_automorphisms(AbelianGroup((2, 2))))
        6
    """
    elements = list(group.elements())
    k = len(group.factors)
    found = []
    for images in it.product(elements, repeat=k):
        if any(any(group.scale(n, img)) for n, img in zip(group.factors, images)):
            continue
        table = {}
        for x in elements:
            acc = group.zero()
            for xi, img in zip(x, images):
                acc = group.add(acc, group.scale(xi, img))
            table[x] = acc
        if len(set(table.values())) == len(elements):
            found.append(table)
    return found


def complex_from_parts(vertices: Mapping[str, ComponentModel], edges: Iterable[tuple],
                       marks: Iterable = ()) -> MetrizedComplex:
    """
    Build a complex from ``(edge_id, (v, point), (w, point)[, length])``
    tuples. Half-edges are named ``"{edge_id}:0"`` and ``"{edge_id}:1"``.

    Example:
        >>> from logpic.complexes import *  # NOQA
        >>> from logpic.components import ComponentModel
        >>> C = complex_from_parts(
        >>>     {'a': ComponentModel.rational(['x', 'y']), 'b': ComponentModel.rational(['z'])},
        >>>     [('e', ('a', 'x'), ('b', 'z'))])
        >>> C.attach
        {'e:0': 'x', 'e:1': 'z'}
    """
    from logpic.monoids import MonoidElement
    verts = [Vertex(v, m.genus) for v, m in vertices.items()]
    built = []
    attach = {}
    for item in edges:
        eid, (v, p), (w, q) = item[0:3]
        length = MonoidElement.coerce(item[3]) if len(item) > 3 else MonoidElement((1,))
        h0, h1 = f'{eid}:0', f'{eid}:1'
        built.append(Edge(eid, ((h0, v), (h1, w)), length))
        attach[h0] = p
        attach[h1] = q
    return MetrizedComplex(Multigraph(verts, built), dict(vertices), attach, marks)
