"""
Vertical log semistable curves over the standard log point, modeled by
their components and nodes, plus line bundles in a finite torus model.

A :class:`LogLineBundle` is a class on every component together with a
gluing datum in ``Z/m`` at every node, where ``Z/m`` stands in for ``k*``.
Rescaling the bundle on component ``v`` by ``λ`` changes the gluing at a
node by ``λ(branch 1) - λ(branch 0)``, so only gluing off a spanning tree
carries information. Twisters have the firing vectors as component classes
and trivial gluing; the log Picard group is the quotient by the twisters.

Example:
    >>> from logpic.logcurve import *  # NOQA
    >>> X = LogCurve.demo('X-B2')
    >>> X.is_semistable()
    True
    >>> T = X.twister('v1', torus=3)
    >>> T.multidegree().coeffs
    (-2, 2)
    >>> T.is_log_equal(X.trivial_bundle(torus=3))
    True
    >>> X.quotient_kernel(torus=3).order
    3
"""
from __future__ import annotations

import itertools as it
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import msgspec
import ubelt as ub
from loguru import logger

from logpic.complexes import ComplexAutomorphism, ComplexClass, MetrizedComplex
from logpic.components import ComponentClass, ComponentModel
from logpic.divisors import GraphDivisor
from logpic.exceptions import (BoundExceededError, InputError,
                               UnsupportedModelError)
from logpic.graph import Edge, GraphAutomorphism, Multigraph, Vertex, loop_midpoint_id
from logpic.linalg import IntMatrix, smith_normal_form
from logpic.monoids import (MonoidElement, MonoidHom, NodeMonoidPresentation,
                            is_unit, node_presentation)
from logpic.utils.util_iterable import compositions


class Node(msgspec.Struct, frozen=True):
    """
    A node with its two branch points ``(component, point)`` and its length
    ``p_e`` in the base monoid.
    """
    id: str
    branches: tuple[tuple[str, str], tuple[str, str]]
    length: MonoidElement = msgspec.field(default_factory=lambda: MonoidElement((1,)))

    @property
    def is_loop(self) -> bool:
        return self.branches[0][0] == self.branches[1][0]


class TorusModel(msgspec.Struct, frozen=True):
    """``Z/order`` standing in for the multiplicative group."""
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise InputError(f'torus order must be >= 1, got {self.order}')

    @classmethod
    def coerce(cls, data) -> TorusModel:
        if isinstance(data, cls):
            return data
        return cls(int(data))


class KernelReport(msgspec.Struct, frozen=True):
    """
    Order of a kernel counted by enumeration, its invariant factors, and the
    order ``m ** b1`` the short exact sequence predicts.
    """
    order: int
    invariants: tuple[int, ...]
    expected: int

    @property
    def ok(self) -> bool:
        inv_order = 1
        for d in self.invariants:
            inv_order *= d
        return self.order == self.expected == inv_order


class CurveAutomorphism(msgspec.Struct, frozen=True):
    """
    A bijection of components with point bijections between their rosters.
    The node bijection is induced through the branch points.
    """
    component_map: dict[str, str]
    point_maps: dict[str, dict[str, str]]


class LogCurve(ub.NiceRepr):
    """
    Args:
        components (Dict[str, ComponentModel]): normalization components
        nodes (Iterable[Node]): nodes with branch points and lengths
        marks (Iterable[Tuple[str, str]]): marked ``(component, point)``
        monoid_rank (int): the base monoid is ``N^monoid_rank``
        validate (bool): raise on invalid input

    Example:
        >>> from logpic.logcurve import *  # NOQA
        >>> X = LogCurve.demo('X-NODALCUBIC')
        >>> print(X)
        <LogCurve(components=1, nodes=1, genus=1, P=N^1)>
        >>> X.to_complex().isomorphic(X.to_complex())
        True
    """

    def __init__(self, components: Mapping[str, ComponentModel], nodes: Iterable,
                 marks: Iterable = (), monoid_rank: int = 1, validate: bool = True):
        nodes = [n if isinstance(n, Node) else _coerce_node(n) for n in nodes]
        self.components = dict(sorted(components.items()))
        self._given_nodes = tuple(nodes)
        self.nodes: tuple[Node, ...] = tuple(sorted(nodes, key=lambda n: n.id))
        self.marks = tuple(tuple(m) for m in marks)
        self.monoid_rank = int(monoid_rank)
        self._memo: dict = {}
        if validate:
            self.validate()

    def __nice__(self):
        return (f'components={len(self.components)}, nodes={len(self.nodes)}, '
                f'genus={self.genus}, P=N^{self.monoid_rank}')

    @classmethod
    def coerce(cls, data) -> LogCurve:
        if isinstance(data, cls):
            return data
        from logpic import schema
        if isinstance(data, dict):
            return schema.CurveSchema.model_validate(data).build()
        if isinstance(data, str) and not data.endswith('.json'):
            return cls.demo(data)
        return schema.load_curve(data)

    @classmethod
    def demo(cls, key: str = 'X-B2') -> LogCurve:
        from logpic.demo import fixtures
        return fixtures.curve_fixture(key)

    def __json__(self) -> dict:
        return {
            'monoidRank': self.monoid_rank,
            'components': {c: m.__json__() for c, m in self.components.items()},
            'nodes': [{'id': n.id, 'branches': [list(b) for b in n.branches],
                       'length': list(n.length.coords)} for n in self.nodes],
            'marks': [list(m) for m in self.marks],
        }

    # --- structure ---

    def validate(self) -> LogCurve:
        """
        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> from logpic.components import ComponentModel
            >>> LogCurve({'c': ComponentModel.rational(['x'])},
            >>>          [Node('n', (('c', 'x'), ('c', 'x')))])
            Traceback (most recent call last):
            ...
            logpic.exceptions.InputError: branch point ('c', 'x') is used twice (at /nodes/0/branches/1)
        """
        if not self.components:
            raise InputError('a curve needs at least one component', '/components')
        if self.monoid_rank < 0:
            raise InputError('monoid rank must be non-negative', '/monoidRank')
        used = set()
        seen_ids = set()
        for idx, node in enumerate(self._given_nodes):
            if node.id in seen_ids:
                raise InputError(f'duplicate node id {node.id!r}', f'/nodes/{idx}/id')
            seen_ids.add(node.id)
            if len(node.length) != self.monoid_rank:
                raise InputError(
                    f'node length {list(node.length.coords)} is not in N^{self.monoid_rank}',
                    f'/nodes/{idx}/length')
            try:
                node_presentation(node.length)
            except InputError as ex:
                raise type(ex)(ex.message, f'/nodes/{idx}/length') from None
            for j, (comp, point) in enumerate(node.branches):
                if comp not in self.components:
                    raise InputError(f'unknown component {comp!r}', f'/nodes/{idx}/branches/{j}/0')
                if point not in self.components[comp].points:
                    raise InputError(
                        f'point {point!r} is not on the roster of {comp!r}',
                        f'/nodes/{idx}/branches/{j}/1')
                if (comp, point) in used:
                    raise InputError(
                        f'branch point {(comp, point)!r} is used twice',
                        f'/nodes/{idx}/branches/{j}')
                used.add((comp, point))
        for idx, (comp, point) in enumerate(self.marks):
            if comp not in self.components or point not in self.components[comp].points:
                raise InputError(f'mark {(comp, point)!r} is not a roster point', f'/marks/{idx}')
            if (comp, point) in used:
                raise InputError(f'mark {(comp, point)!r} sits on a node', f'/marks/{idx}')
            used.add((comp, point))
        # connectivity of the incidence graph
        self.dual_graph()
        return self

    @cached_property
    def component_ids(self) -> tuple[str, ...]:
        return tuple(self.components)

    @cached_property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    @cached_property
    def models(self) -> tuple[ComponentModel, ...]:
        return tuple(self.components[c] for c in self.component_ids)

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise InputError(f'unknown node {node_id!r}')

    @property
    def genus(self) -> int:
        return self.dual_graph().b1 + sum(m.genus for m in self.models)

    def is_vertical(self) -> bool:
        return not self.marks

    def is_semistable(self) -> bool:
        """
        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-B2')
            >>> X.with_lengths({'a': [2]}).is_semistable()
            False
        """
        if self.monoid_rank != 1:
            return False
        return all(is_unit(n.length) for n in self.nodes)

    def is_maximally_degenerate(self) -> bool:
        return all(m.genus == 0 for m in self.models)

    def node_presentations(self) -> dict[str, NodeMonoidPresentation]:
        return {n.id: node_presentation(n.length) for n in self.nodes}

    def base_hom(self) -> MonoidHom:
        """``N^E -> P`` sending the generator of each node to its length."""
        return MonoidHom.from_images([n.length for n in self.nodes], target=self.monoid_rank)

    def with_lengths(self, lengths: Mapping[str, Sequence[int]]) -> LogCurve:
        nodes = [Node(n.id, n.branches, MonoidElement.coerce(lengths[n.id]))
                 if n.id in lengths else n for n in self.nodes]
        return LogCurve(self.components, nodes, self.marks, self.monoid_rank)

    def require_rank_ready(self) -> None:
        if not self.is_vertical():
            raise UnsupportedModelError(
                'rank operations need a vertical curve (no marked points)')
        if not self.is_semistable():
            raise UnsupportedModelError(
                'rank operations need a log semistable curve (P = N, all p_e = 1)')
        for m in self.models:
            m.require_exact()

    # --- groupoid correspondence ---

    def dual_graph(self) -> Multigraph:
        """
        Components become vertices (weighted by genus) and nodes become edges
        with half-edges ``"{node}:0"`` and ``"{node}:1"``.
        """
        if 'dual' not in self._memo:
            verts = [Vertex(c, m.genus) for c, m in self.components.items()]
            edges = [Edge(n.id, ((f'{n.id}:0', n.branches[0][0]),
                                 (f'{n.id}:1', n.branches[1][0])), n.length)
                     for n in self.nodes]
            self._memo['dual'] = Multigraph(verts, edges)
        return self._memo['dual']

    def to_complex(self) -> MetrizedComplex:
        """
        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> C = LogCurve.demo('X-NODALCUBIC').to_complex()
            >>> C.isomorphic(MetrizedComplex.demo('CPX-LOOP-RAT'))
            True
        """
        if 'complex' not in self._memo:
            attach = {}
            for n in self.nodes:
                for i, (_, point) in enumerate(n.branches):
                    attach[f'{n.id}:{i}'] = point
            self._memo['complex'] = MetrizedComplex(
                self.dual_graph(), self.components, attach, self.marks)
        return self._memo['complex']

    @classmethod
    def from_complex(cls, C: MetrizedComplex) -> LogCurve:
        """
        Glue the components of a complex along its edges.

        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> C = MetrizedComplex.demo('CPX-B2-RAT')
            >>> X = LogCurve.from_complex(C)
            >>> X.isomorphic(LogCurve.demo('X-B2'))
            True
            >>> X.to_complex().isomorphic(C)
            True
        """
        G = C.graph
        nodes = []
        for e in G.edges:
            branches = tuple((v, C.attach[h]) for h, v in e.halves)
            nodes.append(Node(e.id, branches, e.length))
        ranks = {len(e.length) for e in G.edges}
        monoid_rank = ranks.pop() if ranks else 1
        return cls(C.components, nodes, C.marks, monoid_rank)

    def isomorphic(self, other: LogCurve) -> bool:
        """Equal up to swapping the two branches of a node."""
        if self.components != other.components or self.monoid_rank != other.monoid_rank:
            return False
        if self.node_ids != other.node_ids or sorted(self.marks) != sorted(other.marks):
            return False
        for a, b in zip(self.nodes, other.nodes):
            if a.length != b.length or sorted(a.branches) != sorted(b.branches):
                return False
        return True

    def to_complex_automorphism(self, phi: CurveAutomorphism) -> ComplexAutomorphism | None:
        """
        Transport an automorphism of the curve to its complex. Returns None
        when the point maps do not permute the nodes.
        """
        by_branch = {}
        for n in self.nodes:
            for i, b in enumerate(n.branches):
                by_branch[b] = (n.id, i)
        vmap = dict(phi.component_map)
        emap, hmap = {}, {}
        for n in self.nodes:
            for i, (c, p) in enumerate(n.branches):
                try:
                    image = (vmap[c], phi.point_maps[c][p])
                except KeyError:
                    return None
                if image not in by_branch:
                    return None
                m_id, j = by_branch[image]
                hmap[f'{n.id}:{i}'] = f'{m_id}:{j}'
                if emap.setdefault(n.id, m_id) != m_id:
                    return None
        gaut = GraphAutomorphism(vmap, emap, hmap)
        return ComplexAutomorphism(gaut, {c: dict(m) for c, m in phi.point_maps.items()})

    @staticmethod
    def from_complex_automorphism(phi: ComplexAutomorphism) -> CurveAutomorphism:
        return CurveAutomorphism(dict(phi.graph.vertex_map),
                                 {v: dict(m) for v, m in phi.point_maps.items()})

    def check_automorphism(self, phi: CurveAutomorphism) -> list[str]:
        """
        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-B2')
            >>> ident = CurveAutomorphism({c: c for c in X.components},
            >>>     {c: {p: p for p in m.points} for c, m in X.components.items()})
            >>> X.check_automorphism(ident)
            []
        """
        transported = self.to_complex_automorphism(phi)
        if transported is None:
            return ['node map: point maps do not permute the nodes']
        return self.to_complex().check_automorphism(transported)

    def subdivide_loops(self) -> LogCurve:
        """
        Replace every self-node ``n`` by a rational bridge ``n/mid`` joined
        through nodes ``n/0`` and ``n/1``.
        """
        if 'subdivided' in self._memo:
            return self._memo['subdivided']
        if not any(n.is_loop for n in self.nodes):
            result = self
        else:
            components = dict(self.components)
            nodes = []
            for n in self.nodes:
                if not n.is_loop:
                    nodes.append(n)
                    continue
                mid = loop_midpoint_id(n.id)
                pts = [f'{mid}:0', f'{mid}:1']
                components[mid] = ComponentModel.rational(pts)
                nodes.append(Node(f'{n.id}/0', (n.branches[0], (mid, pts[0])), n.length))
                nodes.append(Node(f'{n.id}/1', (n.branches[1], (mid, pts[1])), n.length))
            result = LogCurve(components, nodes, self.marks, self.monoid_rank)
        self._memo['subdivided'] = result
        return result

    # --- gluing bookkeeping ---

    @cached_property
    def spanning_tree(self) -> tuple[str, ...]:
        """
        Node ids of a spanning tree of the dual graph: Kruskal over nodes in
        id order.
        """
        parent = {c: c for c in self.component_ids}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        tree = []
        for n in self.nodes:
            a, b = find(n.branches[0][0]), find(n.branches[1][0])
            if a != b:
                parent[max(a, b)] = min(a, b)
                tree.append(n.id)
        return tuple(tree)

    @cached_property
    def off_tree(self) -> tuple[str, ...]:
        tree = set(self.spanning_tree)
        return tuple(n for n in self.node_ids if n not in tree)

    def coboundary(self) -> IntMatrix:
        """
        Node-by-component matrix of the rescaling action:
        ``+1`` at branch 1, ``-1`` at branch 0, zero rows for self-nodes.
        """
        rows = []
        for n in self.nodes:
            row = [0] * len(self.component_ids)
            if not n.is_loop:
                row[self.component_ids.index(n.branches[1][0])] += 1
                row[self.component_ids.index(n.branches[0][0])] -= 1
            rows.append(row)
        return IntMatrix.from_rows(rows, cols=len(self.component_ids))

    def rescale(self, gluing: Sequence[int], lam: Mapping[str, int], m: int) -> tuple[int, ...]:
        out = []
        for n, g in zip(self.nodes, gluing):
            (a, _), (b, _) = n.branches
            out.append((g + lam.get(b, 0) - lam.get(a, 0)) % m)
        return tuple(out)

    def normalizing_rescale(self, gluing: Sequence[int], m: int) -> dict[str, int]:
        """The rescaling that makes the gluing vanish on the spanning tree."""
        root = self.component_ids[0]
        lam = {root: 0}
        tree = [self.node(nid) for nid in self.spanning_tree]
        g_of = dict(zip(self.node_ids, gluing))
        changed = True
        while changed:
            changed = False
            for n in tree:
                (a, _), (b, _) = n.branches
                g = g_of[n.id]
                if a in lam and b not in lam:
                    lam[b] = (lam[a] - g) % m
                    changed = True
                elif b in lam and a not in lam:
                    lam[a] = (lam[b] + g) % m
                    changed = True
        return lam

    # --- bundles ---

    def bundle(self, classes: Mapping[str, ComponentClass] | Sequence[ComponentClass],
               gluing: Mapping[str, int] | Sequence[int] | None = None,
               torus: int | TorusModel = 1) -> LogLineBundle:
        m = TorusModel.coerce(torus).order
        if isinstance(classes, Mapping):
            unknown = sorted(set(classes) - set(self.component_ids))
            if unknown:
                raise InputError(f'class given on unknown component {unknown[0]!r}')
            parts = tuple(model.normalize(classes[c]) if c in classes else model.zero()
                          for c, model in zip(self.component_ids, self.models))
        else:
            parts = tuple(model.normalize(c) for model, c in zip(self.models, classes))
            if len(parts) != len(self.models):
                raise InputError('one class per component is required')
        if gluing is None:
            glue = (0,) * len(self.nodes)
        elif isinstance(gluing, Mapping):
            unknown = sorted(set(gluing) - set(self.node_ids))
            if unknown:
                raise InputError(f'gluing given on unknown node {unknown[0]!r}')
            glue = tuple(int(gluing.get(n, 0)) % m for n in self.node_ids)
        else:
            glue = tuple(int(g) % m for g in gluing)
            if len(glue) != len(self.nodes):
                raise InputError('one gluing datum per node is required')
        return LogLineBundle(self, parts, glue, m)

    def trivial_bundle(self, torus: int | TorusModel = 1) -> LogLineBundle:
        return self.bundle({}, None, torus)

    def twister(self, v: str, torus: int | TorusModel = 1) -> LogLineBundle:
        """
        The bundle ``L_v`` whose restrictions are the node divisors.

        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-NODALCUBIC')
            >>> X.twister('v').multidegree().coeffs
            (0,)
        """
        if not self.is_semistable():
            raise UnsupportedModelError('twisters are only defined on log semistable curves')
        if not self.is_vertical():
            raise UnsupportedModelError('twisters need a vertical curve')
        if v not in self.components:
            raise InputError(f'unknown component {v!r}')
        F = self.to_complex().firing_vectors()[v]
        return self.bundle(F.parts, None, torus)

    def omega_log(self, torus: int | TorusModel = 1) -> LogLineBundle:
        """
        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> LogCurve.demo('X-B2').omega_log().multidegree().coeffs
            (0, 0)
        """
        K = self.to_complex().canonical_class()
        return self.bundle(K.parts, None, torus)

    def lift_divisor(self, D, torus: int | TorusModel = 1) -> LogLineBundle:
        """A bundle with multidegree ``D``, trivial torsion and gluing."""
        if isinstance(D, GraphDivisor):
            D = D.to_dict()
        classes = {c: ComponentClass(int(d), self.components[c].group.zero())
                   for c, d in D.items() if c in self.components}
        unknown = sorted(set(D) - set(self.components))
        if unknown:
            raise InputError(f'divisor on unknown component {unknown[0]!r}')
        return self.bundle(classes, None, torus)

    def bundles_of_degree(self, degree: int, torus: int | TorusModel = 1) -> list[LogLineBundle]:
        """
        One bundle per complex class of the given degree, with trivial
        gluing.
        """
        C = self.to_complex()
        return [self.bundle(c.parts, None, torus) for c in C.classes_of_degree(degree)]

    def gluing_relations(self, m: int) -> IntMatrix:
        """
        ``[δ | m I]``: its cokernel is the group of gluing data modulo
        rescaling.
        """
        n = len(self.nodes)
        scaled = IntMatrix.from_rows([[m * int(i == j) for j in range(n)] for i in range(n)], cols=n)
        return self.coboundary().hstack(scaled)

    def quotient_kernel(self, torus: int | TorusModel) -> KernelReport:
        """
        Kernel of degree-zero log classes onto complex classes: bundles with
        trivial component classes counted up to log equality.

        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> LogCurve.demo('X-NODALCUBIC').quotient_kernel(2).order
            2
        """
        m = TorusModel.coerce(torus).order
        n_vectors = m ** len(self.nodes)
        if n_vectors > 200_000:
            raise BoundExceededError(f'{n_vectors} gluing vectors exceed the enumeration bound')
        zero = tuple(model.zero() for model in self.models)
        keys = set()
        for glue in it.product(range(m), repeat=len(self.nodes)):
            keys.add(LogLineBundle(self, zero, glue, m).log_class_key())
        invariants = tuple(d for d in smith_normal_form(self.gluing_relations(m)).diagonal() if d > 1)
        b1 = self.dual_graph().b1
        report = KernelReport(order=len(keys), invariants=invariants, expected=m ** b1)
        logger.debug('quotient kernel of {} over Z/{}: {}', self, m, report)
        return report

    def pic_kernel(self, torus: int | TorusModel) -> KernelReport:
        """
        Kernel of restriction to the normalization: gluing vectors counted
        up to rescaling, by orbit enumeration.
        """
        m = TorusModel.coerce(torus).order
        n_work = m ** (len(self.nodes) + len(self.components))
        if n_work > 2_000_000:
            raise BoundExceededError(f'orbit enumeration of size {n_work} exceeds the bound')
        seen = set()
        orbits = 0
        for glue in it.product(range(m), repeat=len(self.nodes)):
            if glue in seen:
                continue
            orbits += 1
            for lam in it.product(range(m), repeat=len(self.components)):
                seen.add(self.rescale(glue, dict(zip(self.component_ids, lam)), m))
        invariants = tuple(d for d in smith_normal_form(self.gluing_relations(m)).diagonal()
                           if d > 1)
        return KernelReport(order=orbits, invariants=invariants, expected=m ** self.dual_graph().b1)

    def _effective_keys(self, degree: int, max_enumeration: int) -> set:
        """Complex class keys of every combinatorially effective class."""
        memo = self._memo.setdefault('effective_keys', {})
        if degree in memo:
            return memo[degree]
        C = self.to_complex()
        keys = set()
        count = 0
        for mdeg in compositions(degree, len(self.models)):
            options = [list(model.effective_classes(d)) for model, d in zip(self.models, mdeg)]
            for parts in it.product(*options):
                count += 1
                if count > max_enumeration:
                    raise BoundExceededError(
                        f'more than {max_enumeration} effective classes of degree {degree}')
                keys.add(C.class_key(ComplexClass(tuple(parts))))
        memo[degree] = keys
        return keys


class LogLineBundle(ub.NiceRepr):
    """
    Component classes (in component id order) and gluing data (in node id
    order) on a fixed curve.
    """

    def __init__(self, curve: LogCurve, classes: tuple[ComponentClass, ...],
                 gluing: tuple[int, ...], torus: int):
        self.curve = curve
        self.classes = tuple(classes)
        self.gluing = tuple(gluing)
        self.torus = int(torus)

    def __nice__(self):
        degs = ','.join(str(c.degree) for c in self.classes)
        return f'mdeg=({degs}), gluing={list(self.gluing)}, Z/{self.torus}'

    def __eq__(self, other):
        return (isinstance(other, LogLineBundle) and self.curve is other.curve
                and self.classes == other.classes and self.gluing == other.gluing
                and self.torus == other.torus)

    def __hash__(self):
        return hash((self.classes, self.gluing, self.torus))

    def __json__(self) -> dict:
        X = self.curve
        return {
            'classes': {c: {'degree': k.degree, 'torsion': list(k.torsion)}
                        for c, k in zip(X.component_ids, self.classes)},
            'gluing': dict(zip(X.node_ids, self.gluing)),
        }

    def _check_same(self, other: LogLineBundle):
        if other.curve is not self.curve or other.torus != self.torus:
            raise InputError('bundles live on different curves or torus models')

    def tensor(self, other: LogLineBundle) -> LogLineBundle:
        self._check_same(other)
        X = self.curve
        classes = tuple(m.add(a, b) for m, a, b in zip(X.models, self.classes, other.classes))
        gluing = tuple((a + b) % self.torus for a, b in zip(self.gluing, other.gluing))
        return LogLineBundle(X, classes, gluing, self.torus)

    def inverse(self) -> LogLineBundle:
        X = self.curve
        classes = tuple(m.neg(a) for m, a in zip(X.models, self.classes))
        gluing = tuple((-a) % self.torus for a in self.gluing)
        return LogLineBundle(X, classes, gluing, self.torus)

    def complex_class(self) -> ComplexClass:
        return ComplexClass(self.classes)

    def multidegree(self) -> GraphDivisor:
        return GraphDivisor(self.curve.dual_graph(), [c.degree for c in self.classes])

    def degree(self) -> int:
        return sum(c.degree for c in self.classes)

    def tau(self) -> GraphDivisor:
        """
        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-B2')
            >>> X.lift_divisor({'v1': 2, 'v2': -1}).tau().coeffs
            (0, 1)
        """
        return self.multidegree().q_reduce()

    def normalize_gluing(self) -> LogLineBundle:
        """
        The isomorphic bundle whose gluing vanishes on the spanning tree.

        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-B2')
            >>> X.bundle({}, {'a': 1, 'b': 2}, torus=3).normalize_gluing().gluing
            (0, 1)
        """
        X = self.curve
        lam = X.normalizing_rescale(self.gluing, self.torus)
        return LogLineBundle(X, self.classes, X.rescale(self.gluing, lam, self.torus), self.torus)

    def log_class_key(self) -> tuple:
        X = self.curve
        normal = self.normalize_gluing()
        off_tree = set(X.off_tree)
        off = tuple(g for nid, g in zip(X.node_ids, normal.gluing) if nid in off_tree)
        return (X.to_complex().class_key(self.complex_class()), off)

    def is_log_equal(self, other: LogLineBundle) -> bool:
        self._check_same(other)
        return self.log_class_key() == other.log_class_key()

    def is_comb_effective(self) -> bool:
        """Every component class is effective; gluing plays no role."""
        for m, c in zip(self.curve.models, self.classes):
            m.require_exact()
        return all(m.is_effective_class(c) for m, c in zip(self.curve.models, self.classes))

    def has_comb_effective_rep(self) -> bool:
        self.curve.require_rank_ready()
        return self.curve.to_complex().has_effective_rep(self.complex_class())

    def is_special(self) -> bool:
        """``K - L`` has a combinatorially effective representative."""
        X = self.curve
        K = X.omega_log(self.torus)
        return K.tensor(self.inverse()).has_comb_effective_rep()

    def comb_rank(self) -> int:
        """
        Combinatorial rank, computed as the rank of the associated class on
        the metrized complex.

        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-B2')
            >>> X.trivial_bundle().comb_rank()
            0
            >>> X.lift_divisor({'v1': 1, 'v2': 1}).comb_rank()
            1
        """
        self.curve.require_rank_ready()
        return self.curve.to_complex().rank(self.complex_class())

    def pushforward_subdivided(self) -> LogLineBundle:
        X = self.curve
        Y = X.subdivide_loops()
        if Y is X:
            return self
        classes = dict(zip(X.component_ids, self.classes))
        gluing = {}
        for n, g in zip(X.nodes, self.gluing):
            if n.is_loop:
                gluing[f'{n.id}/0'] = g
            else:
                gluing[n.id] = g
        return Y.bundle(classes, gluing, self.torus)

    def comb_rank_direct(self, max_enumeration: int = 200_000) -> int:
        """
        Combinatorial rank straight from its definition on the finite model:
        the largest ``r`` such that for every combinatorially effective test
        bundle ``E`` of degree ``r`` (every gluing included), ``L - E`` is log
        equal to a combinatorially effective bundle. Runs on the
        loop-subdivided curve.

        Example:
            >>> from logpic.logcurve import *  # NOQA
            >>> X = LogCurve.demo('X-NODALCUBIC')
            >>> L = X.bundle({'v': ComponentClass(1)}, torus=3)
            >>> L.comb_rank_direct(), L.comb_rank()
            (0, 0)
        """
        self.curve.require_rank_ready()
        m = self.torus
        L = self.pushforward_subdivided()
        Y = L.curve
        C = Y.to_complex()
        d = L.degree()

        def reachable(B: LogLineBundle) -> bool:
            # gluing of the effective partner is free, so only the class matters
            if B.degree() < 0:
                return False
            keys = Y._effective_keys(B.degree(), max_enumeration)
            return C.class_key(B.complex_class()) in keys

        if not reachable(L):
            return -1
        off = Y.off_tree
        for k in range(1, d + 2):
            n_tests = 0
            for mdeg in compositions(k, len(Y.models)):
                options = [list(model.effective_classes(dv)) for model, dv in zip(Y.models, mdeg)]
                for parts in it.product(*options):
                    for glue_off in it.product(range(m), repeat=len(off)):
                        n_tests += 1
                        if n_tests > max_enumeration:
                            raise BoundExceededError(
                                f'more than {max_enumeration} test bundles of degree {k}')
                        gluing = dict(zip(off, glue_off))
                        E = Y.bundle(parts, gluing, m)
                        if not reachable(L.tensor(E.inverse())):
                            return k - 1
        return d


def _coerce_node(data) -> Node:
    branches = tuple(tuple(b) for b in data['branches'])
    length = MonoidElement.coerce(data.get('length', (1,)))
    return Node(data['id'], branches, length)


def curve_from_graph(G: Multigraph) -> LogCurve:
    """
    The maximally degenerate vertical semistable curve with dual graph ``G``:
    rational components whose rosters are the half-edges of ``G``.

    Example:
        >>> from logpic.logcurve import *  # NOQA
        >>> X = curve_from_graph(Multigraph.demo('C3'))
        >>> X.is_maximally_degenerate(), X.is_semistable(), X.genus
        (True, True, 1)
    """
    if any(G.weights.values()):
        raise InputError('a maximally degenerate curve needs a weightless graph')
    components = {v: ComponentModel.rational(G.halves_at(v)) for v in G.vertex_ids}
    nodes = [Node(e.id, ((e.halves[0][1], e.halves[0][0]), (e.halves[1][1], e.halves[1][0])),
                  MonoidElement((1,))) for e in G.edges]
    return LogCurve(components, nodes, (), 1)
