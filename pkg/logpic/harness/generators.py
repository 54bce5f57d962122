"""
Seeded random instances and exhaustive enumeration of small multigraphs.

Every generator is a pure function of ``(cfg.seed, index)`` so sweeps can
rebuild any instance from its index alone.

Example:
    >>> from logpic.harness.generators import *  # NOQA
    >>> from logpic.harness.sweeps import SweepConfig
    >>> cfg = SweepConfig(seed=1)
    >>> gen_curve(cfg, 3).__json__() == gen_curve(cfg, 3).__json__()
    True
    >>> len(enumerate_graphs(2, 2))
    6
"""
from __future__ import annotations

import itertools as it
from typing import TYPE_CHECKING

import kwarray
import ubelt as ub
from loguru import logger

from logpic.complexes import MetrizedComplex
from logpic.components import AbelianGroup, ComponentModel
from logpic.graph import Edge, Multigraph, Vertex
from logpic.logcurve import LogCurve
from logpic.monoids import MonoidElement
from logpic.utils.util_iterable import compositions

if TYPE_CHECKING:
    from logpic.harness.sweeps import SweepConfig


def instance_rng(seed: int, index: int):
    return kwarray.ensure_rng(seed * 1_000_003 + index, api='python')


def _random_length(rng, monoid_rank: int) -> MonoidElement:
    if monoid_rank == 1:
        return MonoidElement((1,))
    while True:
        coords = tuple(rng.randint(0, 2) for _ in range(monoid_rank))
        if any(coords):
            return MonoidElement(coords)


def gen_graph(cfg: SweepConfig, index: int = 0, rng=None, loops: bool = True,
              monoid_rank: int = 1) -> Multigraph:
    """
    A random connected multigraph: a random spanning tree plus extra edges
    (parallel edges and loops allowed) up to ``cfg.max_edges``.

    Example:
        >>> from logpic.harness.generators import *  # NOQA
        >>> from logpic.harness.sweeps import SweepConfig
        >>> cfg = SweepConfig(seed=0, max_vertices=1, max_edges=2)
        >>> G = gen_graph(cfg, 5)
        >>> G.vertex_ids, all(e.is_loop for e in G.edges)
        (('v0',), True)
    """
    if rng is None:
        rng = instance_rng(cfg.seed, index)
    n = rng.randint(1, max(1, min(cfg.max_vertices, cfg.max_edges + 1)))
    vids = [f'v{i}' for i in range(n)]
    pairs = []
    for i in range(1, n):
        pairs.append((vids[rng.randrange(i)], vids[i]))
    n_edges = rng.randint(n - 1, max(n - 1, cfg.max_edges))
    while len(pairs) < n_edges:
        a = rng.choice(vids)
        b = rng.choice(vids)
        if a == b and not loops:
            if n == 1:
                break
            continue
        pairs.append((a, b))
    edges = []
    for k, (a, b) in enumerate(pairs):
        eid = f'e{k}'
        edges.append(Edge(eid, ((f'{eid}:0', a), (f'{eid}:1', b)),
                          _random_length(rng, monoid_rank)))
    return Multigraph([Vertex(v) for v in vids], edges)


def _random_group(rng, max_order: int) -> AbelianGroup:
    if max_order >= 4 and rng.random() < 0.2:
        return AbelianGroup((2, 2))
    return AbelianGroup((rng.randint(2, max_order),))


def gen_complex(cfg: SweepConfig, index: int = 0, rng=None, rational: bool = False,
                genus_one_prob: float = 0.35, marks: bool = False,
                loops: bool = True, monoid_rank: int = 1) -> MetrizedComplex:
    """
    A random complex over :func:`gen_graph`. Rational components carry their
    attachment points plus a free point ``x``. Elliptic components carry one
    point per group element plus one point of random class per attachment.

    Example:
        >>> from logpic.harness.generators import *  # NOQA
        >>> from logpic.harness.sweeps import SweepConfig
        >>> cfg = SweepConfig(seed=3, max_group_order=3)
        >>> Cs = [gen_complex(cfg, i) for i in range(20)]
        >>> any(m.genus == 1 for C in Cs for m in C.models)
        True
        >>> all(C.validate() is C for C in Cs)
        True
    """
    if rng is None:
        rng = instance_rng(cfg.seed, index)
    G0 = gen_graph(cfg, rng=rng, loops=loops, monoid_rank=monoid_rank)
    components = {}
    for v in G0.vertex_ids:
        halves = G0.halves_at(v)
        if not rational and cfg.max_group_order >= 2 and rng.random() < genus_one_prob:
            group = _random_group(rng, cfg.max_group_order)
            elements = list(group.elements())
            points = dict(ComponentModel.elliptic(group.factors).points)
            for h in halves:
                points[h] = rng.choice(elements)
            components[v] = ComponentModel(genus=1, group=group, points=points)
        else:
            components[v] = ComponentModel.rational([*halves, 'x'])
    mark_list = []
    if marks and rng.random() < 0.5:
        v = rng.choice(G0.vertex_ids)
        components[v] = components[v].with_points(['m'])
        mark_list.append((v, 'm'))
    G = Multigraph([Vertex(v, components[v].genus) for v in G0.vertex_ids], G0.edges)
    attach = {h: h for h in G.half_edges}
    return MetrizedComplex(G, components, attach, mark_list)


def gen_curve(cfg: SweepConfig, index: int = 0, rng=None, **kwargs) -> LogCurve:
    """The curve glued from :func:`gen_complex` with the same arguments."""
    return LogCurve.from_complex(gen_complex(cfg, index, rng=rng, **kwargs))


def _canonical_form(n: int, edges: list[tuple[int, int]]) -> tuple:
    best = None
    for perm in it.permutations(range(n)):
        relabeled = sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges)
        form = tuple(relabeled)
        if best is None or form < best:
            best = form
    return (n, best)


def _is_connected(n: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(a) for a in range(n)}) == 1


def enumerate_graphs(max_vertices: int, max_edges: int, loops: bool = True) -> list[Multigraph]:
    """
    Every connected multigraph with at most ``max_vertices`` vertices and
    ``max_edges`` edges, one per isomorphism class.

    Example:
        >>> from logpic.harness.generators import *  # NOQA
        >>> [len(G.edges) for G in enumerate_graphs(1, 2)]
        [0, 1, 2]
        >>> len(enumerate_graphs(2, 2, loops=False))
        3
    """
    found = []
    seen = set()
    for n in range(1, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(i, n) if loops or i != j]
        for total in range(n - 1, max_edges + 1):
            for mult in compositions(total, len(pairs)):
                edges = [p for p, k in zip(pairs, mult) for _ in range(k)]
                if not _is_connected(n, edges):
                    continue
                key = ub.hash_data(_canonical_form(n, edges))
                if key in seen:
                    continue
                seen.add(key)
                vids = [f'v{i + 1}' for i in range(n)]
                found.append(Multigraph.from_edges(
                    vids, [(f'e{k + 1}', vids[a], vids[b]) for k, (a, b) in enumerate(edges)]))
    logger.debug('Enumerated {} graphs with <= {} vertices and <= {} edges',
                 len(found), max_vertices, max_edges)
    return found
