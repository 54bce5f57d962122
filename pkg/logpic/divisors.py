"""
Divisors on multigraphs: chip-firing, Dhar's burning algorithm, q-reduced
forms, linear equivalence, ranks and the graph Riemann-Roch defect.

Two rank functions are available. :meth:`GraphDivisor.rank_bn` quantifies
over effective test divisors supported on the vertices of ``G`` itself, so
loops never move chips. :meth:`GraphDivisor.rank_ac` does the same on the
graph obtained by subdividing every loop, which is the version that satisfies
Riemann-Roch on loopy graphs.

Example:
    >>> from logpic.divisors import *  # NOQA
    >>> from logpic.graph import Multigraph
    >>> G = Multigraph.demo('C3')
    >>> D = GraphDivisor.from_dict(G, {'v1': 1})
    >>> D.rank_bn()
    0
    >>> GraphDivisor.from_dict(G, {'v1': 1, 'v2': 1}).rank_bn()
    1
    >>> GraphDivisor.from_dict(G, {'v2': -1, 'v3': 1}).q_reduce().to_dict()
    {'v1': -1, 'v2': 1, 'v3': 0}
    >>> # Loops: the naive rank disagrees with Riemann-Roch
    >>> L1 = GraphDivisor.from_dict(Multigraph.demo('LOOP1'), {'v': 1})
    >>> L1.rank_bn(), L1.rank_ac()
    (1, 0)
    >>> L1.rr_defect(), L1.rr_defect(rank='bn')
    (0, 1)
"""
from __future__ import annotations

from typing import Iterable, Literal, Sequence

import ubelt as ub
from loguru import logger

from logpic.exceptions import BoundExceededError, InputError, PreconditionError
from logpic.graph import Multigraph
from logpic.linalg import integer_solve
from logpic.utils.util_iterable import compositions, num_compositions


class GraphDivisor(ub.NiceRepr):
    """
    An integer vector indexed by the (sorted) vertex ids of a graph.

    Args:
        graph (Multigraph): the underlying graph
        coeffs (Sequence[int]): one coefficient per vertex in id order
    """

    def __init__(self, graph: Multigraph, coeffs: Sequence[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != len(graph.vertices):
            raise InputError(
                f'divisor has {len(coeffs)} coefficients but the graph has '
                f'{len(graph.vertices)} vertices')
        self.graph = graph
        self.coeffs = coeffs

    def __nice__(self):
        return ' '.join(f'{v}:{c}' for v, c in zip(self.graph.vertex_ids, self.coeffs))

    @classmethod
    def from_dict(cls, graph: Multigraph, data: dict[str, int]) -> GraphDivisor:
        """Omitted vertices mean 0."""
        coeffs = [0] * len(graph.vertices)
        for v, c in data.items():
            coeffs[graph.index(v)] += int(c)
        return cls(graph, coeffs)

    @classmethod
    def zero(cls, graph: Multigraph) -> GraphDivisor:
        return cls(graph, [0] * len(graph.vertices))

    @classmethod
    def point(cls, graph: Multigraph, v: str, mult: int = 1) -> GraphDivisor:
        return cls.from_dict(graph, {v: mult})

    @classmethod
    def coerce(cls, graph: Multigraph, data) -> GraphDivisor:
        if isinstance(data, cls):
            return data
        if isinstance(data, dict):
            return cls.from_dict(graph, data)
        return cls(graph, data)

    def to_dict(self) -> dict[str, int]:
        return dict(zip(self.graph.vertex_ids, self.coeffs))

    def __json__(self):
        return self.to_dict()

    def __getitem__(self, v: str) -> int:
        return self.coeffs[self.graph.index(v)]

    def _check_same(self, other: GraphDivisor):
        if self.graph is not other.graph and self.graph != other.graph:
            raise InputError('divisors live on different graphs')

    def __add__(self, other: GraphDivisor) -> GraphDivisor:
        self._check_same(other)
        return GraphDivisor(self.graph, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: GraphDivisor) -> GraphDivisor:
        self._check_same(other)
        return GraphDivisor(self.graph, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> GraphDivisor:
        return GraphDivisor(self.graph, [-a for a in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, GraphDivisor) and self.coeffs == other.coeffs
                and self.graph == other.graph)

    def __hash__(self):
        return hash(self.coeffs)

    def degree(self) -> int:
        return sum(self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # --- chip firing ---

    def fire(self, S: Iterable[str]) -> GraphDivisor:
        """
        ``D - L @ 1_S``.

        Example:
            >>> from logpic.divisors import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> G = Multigraph.demo('C3')
            >>> GraphDivisor.zero(G).fire(['v1']).coeffs
            (-2, 1, 1)
            >>> D = GraphDivisor.from_dict(Multigraph.demo('LOOP1'), {'v': 5})
            >>> D.fire(['v']).coeffs
            (5,)
        """
        return self._fire_many(set(S), 1)

    def _fire_many(self, S: set[str], k: int) -> GraphDivisor:
        G = self.graph
        indicator = [0] * len(G.vertices)
        for v in S:
            indicator[G.index(v)] = k
        delta = G.laplacian() @ indicator
        return GraphDivisor(G, [a - b for a, b in zip(self.coeffs, delta)])

    def dhar(self, q: str | None = None) -> frozenset[str]:
        """
        Run Dhar's burning algorithm from ``q`` and return the unburnt set.

        A vertex catches fire once the number of edges joining it to burnt
        vertices exceeds its coefficient. Vertices are visited in passes in id
        order. Loops never carry fire.

        Example:
            >>> from logpic.divisors import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> G = Multigraph.demo('C3')
            >>> sorted(GraphDivisor(G, [-1, 1, 0]).dhar('v1'))
            []
            >>> sorted(GraphDivisor(G, [0, 1, 1]).dhar('v1'))
            ['v2', 'v3']
        """
        G = self.graph
        q = G.base_vertex if q is None else q
        G.index(q)
        for v, c in zip(G.vertex_ids, self.coeffs):
            if v != q and c < 0:
                raise PreconditionError(
                    f'Dhar burning needs non-negative coefficients off {q!r}, '
                    f'but {v!r} has {c}')
        burnt = {q}
        changed = True
        while changed:
            changed = False
            for v in G.vertex_ids:
                if v in burnt:
                    continue
                exposure = sum(m for w, m in G.neighbors(v).items() if w in burnt)
                if exposure > self[v]:
                    burnt.add(v)
                    changed = True
        return frozenset(G.vertex_ids) - burnt

    def q_reduce(self, q: str | None = None) -> GraphDivisor:
        """
        The unique ``q``-reduced divisor equivalent to this one.

        Example:
            >>> from logpic.divisors import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> B2 = Multigraph.demo('B2')
            >>> GraphDivisor(B2, [2, -1]).q_reduce('v1').coeffs
            (0, 1)
        """
        return self.q_reduce_with_script(q)[0]

    def q_reduce_with_script(self, q: str | None = None) -> tuple[GraphDivisor, tuple[int, ...]]:
        """
        Returns the reduced divisor ``R`` and a firing script ``x`` with
        ``R = D - L @ x``.
        """
        G = self.graph
        q = G.base_vertex if q is None else q
        G.index(q)
        script = [0] * len(G.vertices)
        D = self

        def apply(S, k):
            nonlocal D
            D = D._fire_many(S, k)
            for v in S:
                script[G.index(v)] += k

        # Clear debt off q, farthest level first. Firing everything closer
        # than level d only touches levels < d and pushes chips into level d.
        dist = G.distances(q)
        max_level = max(dist.values())
        for d in range(max_level, 0, -1):
            level = [v for v in G.vertex_ids if dist[v] == d]
            debt = max(0, max(-D[v] for v in level))
            if debt:
                inner = {v for v in G.vertex_ids if dist[v] < d}
                apply(inner, debt)

        while True:
            S = D.dhar(q)
            if not S:
                break
            apply(S, 1)
        return D, tuple(script)

    def is_reduced(self, q: str | None = None) -> bool:
        G = self.graph
        q = G.base_vertex if q is None else q
        if any(c < 0 for v, c in zip(G.vertex_ids, self.coeffs) if v != q):
            return False
        return not self.dhar(q)

    def reduced_key(self) -> tuple[int, ...]:
        """Hashable key shared exactly by equivalent divisors."""
        return self.q_reduce().coeffs

    def is_equivalent(self, other: GraphDivisor) -> bool:
        """
        Example:
            >>> from logpic.divisors import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> G = Multigraph.demo('C3')
            >>> GraphDivisor(G, [0, -1, 1]).is_equivalent(GraphDivisor(G, [-1, 1, 0]))
            True
            >>> GraphDivisor.zero(G).is_equivalent(GraphDivisor(G, [1, -1, 0]))
            False
        """
        self._check_same(other)
        if self.degree() != other.degree():
            return False
        return self.reduced_key() == other.reduced_key()

    def firing_script_to(self, other: GraphDivisor) -> tuple[int, ...] | None:
        """Some ``x`` with ``self - L @ x == other`` or None."""
        self._check_same(other)
        diff = [a - b for a, b in zip(self.coeffs, other.coeffs)]
        return integer_solve(self.graph.laplacian(), diff)

    def has_effective_rep(self) -> bool:
        """
        Example:
            >>> from logpic.divisors import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> G = Multigraph.demo('C3')
            >>> GraphDivisor(G, [-1, 1, 1]).has_effective_rep()
            True
            >>> GraphDivisor(G, [-1, 1, 0]).has_effective_rep()
            False
        """
        if self.degree() < 0:
            return False
        R = self.q_reduce()
        return R[self.graph.base_vertex] >= 0

    def linear_system(self, max_candidates: int = 100_000) -> list[GraphDivisor]:
        """
        All effective divisors equivalent to this one.

        Example:
            >>> from logpic.divisors import *  # NOQA
            >>> from logpic.graph import Multigraph
            >>> G = Multigraph.demo('C3')
            >>> [D.coeffs for D in GraphDivisor(G, [2, 0, 0]).linear_system()]
            [(0, 1, 1), (2, 0, 0)]
        """
        d = self.degree()
        n = len(self.graph.vertices)
        if num_compositions(d, n) > max_candidates:
            raise BoundExceededError(
                f'linear system enumeration would visit more than {max_candidates} divisors')
        key = self.reduced_key()
        found = []
        for coeffs in compositions(d, n):
            cand = GraphDivisor(self.graph, coeffs)
            if cand.reduced_key() == key:
                found.append(cand)
        return found

    # --- rank ---

    def rank_bn(self) -> int:
        """
        Baker-Norine rank on the graph as given.
        """
        return _RankSolver.for_graph(self.graph).rank(self.coeffs)

    def pushforward_subdivided(self) -> GraphDivisor:
        """This divisor on the loop-subdivided graph, zero at the midpoints."""
        G2, mapping = self.graph.subdivide_loops()
        if G2 is self.graph:
            return self
        return GraphDivisor.from_dict(G2, {mapping[v]: c for v, c in self.to_dict().items()})

    def rank_ac(self) -> int:
        """
        Rank computed on the loop-subdivided graph.
        """
        return self.pushforward_subdivided().rank_bn()

    def rank(self, rank: Literal['ac', 'bn'] = 'ac') -> int:
        if rank == 'ac':
            return self.rank_ac()
        elif rank == 'bn':
            return self.rank_bn()
        raise InputError(f'unknown rank semantics {rank!r}')

    def rr_defect(self, rank: Literal['ac', 'bn'] = 'ac') -> int:
        """
        ``r(D) - r(K - D) - (deg D - g + 1)``, zero when Riemann-Roch holds.

        With ``rank='ac'`` everything is evaluated on the loop-subdivided
        graph using its own canonical divisor. ``rank='bn'`` evaluates on the
        graph as given.
        """
        g = self.graph.genus
        if rank == 'ac':
            D = self.pushforward_subdivided()
        elif rank == 'bn':
            D = self
        else:
            raise InputError(f'unknown rank semantics {rank!r}')
        K = D.graph.canonical_divisor()
        return D.rank_bn() - (K - D).rank_bn() - (D.degree() - g + 1)


def jacobian(G: Multigraph) -> list[int]:
    """Invariant factors of the Jacobian (critical group) of ``G``."""
    return G.jacobian()


class _RankSolver:
    """
    Memoized Baker-Norine rank on one graph.

    Uses ``r(D) = -1`` if ``|D|`` is empty and ``r(D) = 1 + min_v r(D - v)``
    otherwise, keyed by q-reduced forms. This is the same quantity as checking
    every effective test divisor of degree ``r``, since each such divisor is
    ``v + E'`` with ``E'`` of degree ``r - 1``.
    """
    _cache: dict = {}

    def __init__(self, graph: Multigraph):
        self.graph = graph
        self.memo: dict[tuple[int, ...], int] = {}

    @classmethod
    def for_graph(cls, graph: Multigraph) -> _RankSolver:
        key = graph._key
        solver = cls._cache.get(key)
        if solver is None:
            if len(cls._cache) > 256:
                cls._cache.clear()
            solver = cls._cache[key] = cls(graph)
        return solver

    def rank(self, coeffs: tuple[int, ...]) -> int:
        D = GraphDivisor(self.graph, coeffs)
        if D.degree() < 0:
            return -1
        R = D.q_reduce()
        key = R.coeffs
        if key in self.memo:
            return self.memo[key]
        if R[self.graph.base_vertex] < 0:
            result = -1
        else:
            result = None
            for i in range(len(coeffs)):
                sub = list(key)
                sub[i] -= 1
                r = self.rank(tuple(sub))
                if result is None or r < result:
                    result = r
                if result == -1:
                    break
            result += 1
        self.memo[key] = result
        if len(self.memo) % 5000 == 0:
            logger.debug('rank memo on {} holds {} classes', self.graph, len(self.memo))
        return result


def reduced_divisors(G: Multigraph, degree: int, q: str | None = None) -> list[GraphDivisor]:
    """
    One ``q``-reduced divisor per class of the given degree, i.e. the
    superstable configurations off ``q`` completed by the coefficient at
    ``q``. There are exactly ``|Jac(G)|`` of them.

    Example:
        >>> from logpic.divisors import *  # NOQA
        >>> from logpic.graph import Multigraph
        >>> [D.coeffs for D in reduced_divisors(Multigraph.demo('C3'), 0)]
        [(0, 0, 0), (-1, 0, 1), (-1, 1, 0)]
        >>> len(reduced_divisors(Multigraph.demo('B3'), 2))
        3
    """
    from logpic.utils.util_iterable import box_vectors
    q = G.base_vertex if q is None else q
    qi = G.index(q)
    others = [v for v in G.vertex_ids if v != q]
    highs = [sum(G.neighbors(v).values()) - 1 for v in others]
    found = []
    for config in box_vectors([0] * len(others), highs):
        coeffs = [0] * len(G.vertices)
        for v, c in zip(others, config):
            coeffs[G.index(v)] = c
        coeffs[qi] = degree - sum(config)
        D = GraphDivisor(G, coeffs)
        if not D.dhar(q):
            found.append(D)
    return found
