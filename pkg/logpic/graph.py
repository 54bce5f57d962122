"""
Half-edge multigraphs with vertex weights and monoid-valued edge lengths.

Every edge is a pair of distinct half-edges. A loop is an edge whose two
half-edges sit at the same vertex. Vertex ids are strings and every output of
this module is ordered by id.

Example:
    >>> from logpic.graph import *  # NOQA
    >>> G = Multigraph.demo('C3')
    >>> G.vertex_ids
    ('v1', 'v2', 'v3')
    >>> G.laplacian().tolist()
    [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    >>> G.invariants()
    GraphInvariants(b1=1, genus=1)
    >>> len(G.automorphisms())
    6
"""
from __future__ import annotations

import itertools as it
from collections import defaultdict
from functools import cached_property
from typing import Iterable, Sequence

import msgspec
import ubelt as ub
from loguru import logger

from logpic.exceptions import BoundExceededError, InputError, InvalidGraphError
from logpic.linalg import IntMatrix, cokernel_invariants
from logpic.monoids import MonoidElement


class Vertex(msgspec.Struct, frozen=True):
    id: str
    weight: int = 0


class Edge(msgspec.Struct, frozen=True):
    """
    An edge given as two ``(half_edge_id, vertex_id)`` pairs.
    """
    id: str
    halves: tuple[tuple[str, str], tuple[str, str]]
    length: MonoidElement = msgspec.field(default_factory=lambda: MonoidElement((1,)))

    @property
    def endpoints(self) -> tuple[str, str]:
        return (self.halves[0][1], self.halves[1][1])

    @property
    def half_ids(self) -> tuple[str, str]:
        return (self.halves[0][0], self.halves[1][0])

    @property
    def is_loop(self) -> bool:
        return self.halves[0][1] == self.halves[1][1]


class GraphInvariants(msgspec.Struct, frozen=True):
    b1: int
    genus: int


class GraphAutomorphism(msgspec.Struct, frozen=True):
    """
    A vertex bijection together with a compatible edge bijection. The induced
    half-edge bijection is stored as well so that complexes can be
    transported along it.
    """
    vertex_map: dict[str, str]
    edge_map: dict[str, str]
    half_edge_map: dict[str, str]

    def compose(self, other: GraphAutomorphism) -> GraphAutomorphism:
        """``self`` after ``other``."""
        return GraphAutomorphism(
            vertex_map={k: self.vertex_map[v] for k, v in other.vertex_map.items()},
            edge_map={k: self.edge_map[v] for k, v in other.edge_map.items()},
            half_edge_map={k: self.half_edge_map[v] for k, v in other.half_edge_map.items()},
        )

    def inverse(self) -> GraphAutomorphism:
        return GraphAutomorphism(
            vertex_map={v: k for k, v in self.vertex_map.items()},
            edge_map={v: k for k, v in self.edge_map.items()},
            half_edge_map={v: k for k, v in self.half_edge_map.items()},
        )

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.vertex_map.items()) and all(
            k == v for k, v in self.edge_map.items()) and all(
            k == v for k, v in self.half_edge_map.items())

    def key(self) -> tuple:
        return (tuple(sorted(self.vertex_map.items())),
                tuple(sorted(self.edge_map.items())),
                tuple(sorted(self.half_edge_map.items())))


class Multigraph(ub.NiceRepr):
    """
    A connected loopy multigraph built from half-edges.

    Args:
        vertices (Iterable[Vertex | dict]): vertex ids and weights
        edges (Iterable[Edge | dict]): edges with their half-edges
        validate (bool): if True (the default) raise on invalid input

    Example:
        >>> from logpic.graph import *  # NOQA
        >>> G = Multigraph.from_edges(['a', 'b'], [('e', 'a', 'b'), ('f', 'a', 'b')])
        >>> print(G)
        <Multigraph(V=2, E=2, loops=0)>
        >>> G.valence('a')
        2
        >>> Multigraph.from_edges(['a', 'b'], [])
        Traceback (most recent call last):
        ...
        logpic.exceptions.InvalidGraphError: graph must be connected
    """

    def __init__(self, vertices: Iterable, edges: Iterable, validate: bool = True):
        vertices = [v if isinstance(v, Vertex) else Vertex(**v) for v in vertices]
        edges = [e if isinstance(e, Edge) else _coerce_edge(e) for e in edges]
        # input order is kept only so errors can point into the source file
        self._given = (tuple(vertices), tuple(edges))
        self.vertices: tuple[Vertex, ...] = tuple(sorted(vertices, key=lambda v: v.id))
        self.edges: tuple[Edge, ...] = tuple(sorted(edges, key=lambda e: e.id))
        if validate:
            self.validate()

    def __nice__(self):
        n_loops = sum(e.is_loop for e in self.edges)
        return f'V={len(self.vertices)}, E={len(self.edges)}, loops={n_loops}'

    @classmethod
    def from_edges(cls, vertices: Sequence[str] | dict[str, int],
                   edges: Iterable[Sequence], validate: bool = True) -> Multigraph:
        """
        Build a graph from ``(edge_id, v, w[, length])`` tuples. Half-edges
        are named ``"{edge_id}:0"`` (at ``v``) and ``"{edge_id}:1"`` (at ``w``).
        """
        if isinstance(vertices, dict):
            verts = [Vertex(k, int(w)) for k, w in vertices.items()]
        else:
            verts = [Vertex(k) for k in vertices]
        built = []
        for item in edges:
            eid, v, w = item[0:3]
            length = MonoidElement.coerce(item[3]) if len(item) > 3 else MonoidElement((1,))
            built.append(Edge(eid, ((f'{eid}:0', v), (f'{eid}:1', w)), length))
        return cls(verts, built, validate=validate)

    @classmethod
    def coerce(cls, data) -> Multigraph:
        """
        Accept a graph, a JSON-like dict, a fixture name, or a path to a JSON
        file.
        """
        if isinstance(data, cls):
            return data
        if isinstance(data, dict):
            from logpic import schema
            return schema.GraphSchema.model_validate(data).build()
        if isinstance(data, str) and not data.endswith('.json'):
            return cls.demo(data)
        from logpic import schema
        return schema.load_graph(data)

    @classmethod
    def demo(cls, key: str = 'C3') -> Multigraph:
        from logpic.demo import fixtures
        return fixtures.graph_fixture(key)

    def __json__(self) -> dict:
        return {
            'vertices': [{'id': v.id, 'weight': v.weight} for v in self.vertices],
            'edges': [
                {'id': e.id, 'halves': [list(h) for h in e.halves],
                 'length': list(e.length.coords)}
                for e in self.edges
            ],
        }

    @cached_property
    def _key(self) -> tuple:
        return (tuple((v.id, v.weight) for v in self.vertices),
                tuple((e.id, e.halves, e.length.coords) for e in self.edges))

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    # --- structure ---

    def validate(self) -> Multigraph:
        """
        Check the half-edge pairing and connectivity.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> G = Multigraph([Vertex('a'), Vertex('b')], [
            >>>     Edge('e', (('h1', 'a'), ('h2', 'b'))),
            >>>     Edge('f', (('h1', 'a'), ('h3', 'b')))], validate=False)
            >>> G.validate()
            Traceback (most recent call last):
            ...
            logpic.exceptions.InvalidGraphError: half-edge 'h1' belongs to more than one edge (at /edges/1/halves/0)
        """
        given_vertices, given_edges = self._given
        seen_vertices = set()
        for idx, v in enumerate(given_vertices):
            if v.id in seen_vertices:
                raise InvalidGraphError(f'duplicate vertex id {v.id!r}', f'/vertices/{idx}/id')
            if v.weight < 0:
                raise InvalidGraphError(f'vertex {v.id!r} has negative weight', f'/vertices/{idx}/weight')
            seen_vertices.add(v.id)
        if not self.vertices:
            raise InvalidGraphError('graph must have at least one vertex', '/vertices')
        seen_halves = set()
        seen_edges = set()
        length_rank = None
        for idx, e in enumerate(given_edges):
            if e.id in seen_edges:
                raise InvalidGraphError(f'duplicate edge id {e.id!r}', f'/edges/{idx}/id')
            seen_edges.add(e.id)
            if length_rank is None:
                length_rank = len(e.length)
            elif len(e.length) != length_rank:
                raise InvalidGraphError(
                    'edge lengths must live in a single monoid', f'/edges/{idx}/length')
            if e.halves[0][0] == e.halves[1][0]:
                raise InvalidGraphError(
                    f'edge {e.id!r} needs two distinct half-edges', f'/edges/{idx}/halves')
            for j, (h, v) in enumerate(e.halves):
                if v not in seen_vertices:
                    raise InvalidGraphError(
                        f'half-edge {h!r} is attached to unknown vertex {v!r}',
                        f'/edges/{idx}/halves/{j}/1')
                if h in seen_halves:
                    raise InvalidGraphError(
                        f'half-edge {h!r} belongs to more than one edge',
                        f'/edges/{idx}/halves/{j}')
                seen_halves.add(h)
        if len(self.connected_components()) != 1:
            raise InvalidGraphError('graph must be connected')
        return self

    def connected_components(self) -> list[set[str]]:
        adj = defaultdict(set)
        for e in self.edges:
            v, w = e.endpoints
            adj[v].add(w)
            adj[w].add(v)
        remaining = set(self.vertex_ids)
        comps = []
        while remaining:
            root = min(remaining)
            comp = {root}
            stack = [root]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
            remaining -= comp
        return comps

    @cached_property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertex_ids)}

    @cached_property
    def _edge_lut(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def half_edges(self) -> dict[str, str]:
        """Map from half-edge id to its vertex."""
        return {h: v for e in self.edges for h, v in e.halves}

    @cached_property
    def half_edge_owner(self) -> dict[str, str]:
        """Map from half-edge id to its edge."""
        return {h: e.id for e in self.edges for h, _ in e.halves}

    @cached_property
    def weights(self) -> dict[str, int]:
        return {v.id: v.weight for v in self.vertices}

    @property
    def base_vertex(self) -> str:
        """The lexicographically least vertex id."""
        return self.vertex_ids[0]

    def index(self, v: str) -> int:
        try:
            return self._vertex_index[v]
        except KeyError:
            raise InputError(f'unknown vertex {v!r}') from None

    def edge(self, e: str) -> Edge:
        try:
            return self._edge_lut[e]
        except KeyError:
            raise InputError(f'unknown edge {e!r}') from None

    def halves_at(self, v: str) -> list[str]:
        self.index(v)
        return sorted(h for h, w in self.half_edges.items() if w == v)

    def other_half(self, h: str) -> str:
        e = self.edge(self.half_edge_owner[h])
        a, b = e.half_ids
        return b if h == a else a

    def valence(self, v: str) -> int:
        """
        Number of half-edges at ``v`` (a loop counts twice).

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> Multigraph.demo('LOOP1').valence('v')
            2
            >>> Multigraph.demo('B3').valence('v1')
            3
        """
        return len(self.halves_at(v))

    def num_loops(self, v: str) -> int:
        self.index(v)
        return sum(1 for e in self.edges if e.is_loop and e.endpoints[0] == v)

    def loops(self) -> list[Edge]:
        return [e for e in self.edges if e.is_loop]

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def edges_between(self, v: str, w: str) -> list[Edge]:
        return [e for e in self.edges if sorted(e.endpoints) == sorted((v, w))]

    @cached_property
    def _adjacency(self) -> dict[str, dict[str, int]]:
        # non-loop edge multiplicities
        adj = {v: defaultdict(int) for v in self.vertex_ids}
        for e in self.edges:
            v, w = e.endpoints
            if v != w:
                adj[v][w] += 1
                adj[w][v] += 1
        return {v: dict(nbrs) for v, nbrs in adj.items()}

    def neighbors(self, v: str) -> dict[str, int]:
        """Non-loop neighbors of ``v`` with edge multiplicities."""
        self.index(v)
        return self._adjacency[v]

    def distances(self, q: str) -> dict[str, int]:
        """Breadth first search distances from ``q``."""
        dist = {q: 0}
        frontier = [q]
        while frontier:
            nxt = []
            for u in frontier:
                for w in sorted(self.neighbors(u)):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    # --- invariants ---

    def invariants(self) -> GraphInvariants:
        """
        Example:
            >>> from logpic.graph import *  # NOQA
            >>> G = Multigraph.from_edges({'v1': 1, 'v2': 0}, [('a', 'v1', 'v2'), ('b', 'v1', 'v2'), ('c', 'v1', 'v2')])
            >>> G.invariants()
            GraphInvariants(b1=2, genus=3)
        """
        b1 = len(self.edges) - len(self.vertices) + 1
        return GraphInvariants(b1=b1, genus=b1 + sum(self.weights.values()))

    @property
    def b1(self) -> int:
        return self.invariants().b1

    @property
    def genus(self) -> int:
        return self.invariants().genus

    def laplacian(self) -> IntMatrix:
        """
        ``L[v][v] = valence(v) - 2 * loops(v)`` and ``L[v][w] = -#edges(v, w)``.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> Multigraph.demo('LOOP1').laplacian().tolist()
            [[0]]
            >>> Multigraph.demo('B2').laplacian().tolist()
            [[2, -2], [-2, 2]]
        """
        return self._laplacian

    @cached_property
    def _laplacian(self) -> IntMatrix:
        n = len(self.vertices)
        rows = [[0] * n for _ in range(n)]
        for e in self.edges:
            v, w = e.endpoints
            if v == w:
                continue
            i, j = self.index(v), self.index(w)
            rows[i][i] += 1
            rows[j][j] += 1
            rows[i][j] -= 1
            rows[j][i] -= 1
        return IntMatrix.from_rows(rows, cols=n)

    def reduced_laplacian(self, q: str | None = None) -> IntMatrix:
        i = self.index(self.base_vertex if q is None else q)
        return self.laplacian().submatrix(i, i)

    def jacobian(self) -> list[int]:
        """
        Invariant factors of the degree-zero class group.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> Multigraph.demo('B3').jacobian()
            [3]
            >>> Multigraph.demo('P2').jacobian()
            []
        """
        return cokernel_invariants(self.reduced_laplacian())

    def spanning_tree_count(self) -> int:
        """
        Number of spanning trees, which is also the order of the Jacobian.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> Multigraph.demo('C3').spanning_tree_count()
            3
            >>> Multigraph.demo('K1').spanning_tree_count()
            1
        """
        return self.reduced_laplacian().det()

    def canonical_divisor(self):
        """
        ``K(v) = valence(v) - 2``.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> Multigraph.demo('B3').canonical_divisor().coeffs
            (1, 1)
        """
        from logpic.divisors import GraphDivisor
        return GraphDivisor(self, [self.valence(v) - 2 for v in self.vertex_ids])

    # --- constructions ---

    def subdivide_loops(self) -> tuple[Multigraph, dict[str, str]]:
        """
        Replace each loop ``e`` at ``v`` by two parallel edges ``e/0`` and
        ``e/1`` through a new weight-0 vertex ``e/mid``.

        Returns:
            Tuple[Multigraph, Dict[str, str]]: the new graph and the embedding
            of the old vertex ids into it.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> G2, mapping = Multigraph.demo('LOOP1').subdivide_loops()
            >>> G2.vertex_ids
            ('l/mid', 'v')
            >>> G2.laplacian().tolist()
            [[2, -2], [-2, 2]]
            >>> C3 = Multigraph.demo('C3')
            >>> C3.subdivide_loops()[0] == C3
            True
        """
        mapping = {v: v for v in self.vertex_ids}
        if not self.has_loops():
            return self, mapping
        vertices = list(self.vertices)
        edges = []
        for e in self.edges:
            if not e.is_loop:
                edges.append(e)
                continue
            v = e.endpoints[0]
            mid = loop_midpoint_id(e.id)
            (h0, _), (h1, _) = e.halves
            vertices.append(Vertex(mid, 0))
            edges.append(Edge(f'{e.id}/0', ((h0, v), (f'{mid}:0', mid)), e.length))
            edges.append(Edge(f'{e.id}/1', ((h1, v), (f'{mid}:1', mid)), e.length))
        new = Multigraph(vertices, edges)
        logger.debug('Subdivided {} loops', len(self.loops()))
        return new, mapping

    def automorphisms(self, max_vertices: int = 8) -> list[GraphAutomorphism]:
        """
        Brute-force all automorphisms preserving incidence, weights and edge
        lengths.

        Loops keep their half-edge orientation, so the result is a group of
        (vertex permutation, edge permutation) pairs.

        Example:
            >>> from logpic.graph import *  # NOQA
            >>> len(Multigraph.demo('B2').automorphisms())
            4
            >>> G = Multigraph.from_edges(['v1', 'v2'], [('a', 'v1', 'v2', [1, 0]), ('b', 'v1', 'v2', [0, 1])])
            >>> len(G.automorphisms())
            2
        """
        if len(self.vertices) > max_vertices:
            raise BoundExceededError(
                f'automorphism search refuses graphs with more than '
                f'{max_vertices} vertices (got {len(self.vertices)})')

        vids = self.vertex_ids
        # edges keyed by unordered endpoint pair
        by_pair = defaultdict(list)
        for e in self.edges:
            by_pair[tuple(sorted(e.endpoints))].append(e)

        results = []
        for perm in _vertex_bijections(self, vids):
            vmap = dict(zip(vids, perm))
            choices = []
            for pair, edges in sorted(by_pair.items()):
                image_pair = tuple(sorted((vmap[pair[0]], vmap[pair[1]])))
                targets = by_pair[image_pair]
                options = []
                for tperm in it.permutations(targets):
                    if all(a.length == b.length for a, b in zip(edges, tperm)):
                        options.append(list(zip(edges, tperm)))
                choices.append(options)
            for combo in it.product(*choices):
                emap = {}
                hmap = {}
                for src, dst in it.chain.from_iterable(combo):
                    emap[src.id] = dst.id
                    if src.is_loop:
                        hmap[src.half_ids[0]] = dst.half_ids[0]
                        hmap[src.half_ids[1]] = dst.half_ids[1]
                    else:
                        for h, v in src.halves:
                            hmap[h] = next(dh for dh, dv in dst.halves if dv == vmap[v])
                results.append(GraphAutomorphism(vmap, emap, hmap))
        logger.debug('Found {} automorphisms of {}', len(results), self)
        return results


def loop_midpoint_id(edge_id: str) -> str:
    return f'{edge_id}/mid'


def _coerce_edge(data: dict) -> Edge:
    halves = tuple(tuple(h) for h in data['halves'])
    length = MonoidElement.coerce(data.get('length', (1,)))
    return Edge(data['id'], halves, length)


def _vertex_bijections(G: Multigraph, vids: Sequence[str]):
    """
    Backtracking over vertex bijections that preserve weights, loop counts
    and non-loop edge multiplicities (with length multisets).
    """
    n = len(vids)

    def pair_lengths(a, b):
        return sorted(e.length.coords for e in G.edges_between(a, b))

    profile = {v: (G.weights[v], G.valence(v), sorted(
        e.length.coords for e in G.loops() if e.endpoints[0] == v)) for v in vids}

    image = []
    used = set()

    def extend(i):
        if i == n:
            yield tuple(image)
            return
        v = vids[i]
        for w in vids:
            if w in used or profile[w] != profile[v]:
                continue
            ok = all(pair_lengths(vids[j], v) == pair_lengths(image[j], w)
                     for j in range(i))
            if not ok:
                continue
            image.append(w)
            used.add(w)
            yield from extend(i + 1)
            image.pop()
            used.discard(w)

    yield from extend(0)
