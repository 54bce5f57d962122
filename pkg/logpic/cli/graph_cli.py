"""
Verbs on finite multigraphs and their divisors.

Example:
    >>> from logpic.cli.graph_cli import *  # NOQA
    >>> GraphModalCLI.main(argv=['--help'], _noexit=True)
"""
from __future__ import annotations

import scriptconfig as scfg

from logpic.cli.common import (EXIT_OK, VerbConfig, load_input, read_document,
                               report_status, sweep_config)


class _GraphInput(VerbConfig):
    graph = scfg.Value(None, type=str, position=1, required=True,
                       help='graph JSON file or fixture name (e.g. C3)')

    def load_graph(self):
        return load_input('graph', self.graph)

    def load_divisor(self, G, key='divisor'):
        from logpic.schema import load_graph_divisor
        return load_graph_divisor(G, read_document(self[key]))


class GraphRankConfig(_GraphInput):
    """
    Rank of a divisor. Loops are subdivided unless ``--naive_rank`` asks
    for the loop-blind rank of the graph as given.
    """
    __epilog__ = """
    Examples:
      logpic graph rank C3 --divisor '{"v1": 1}'
      logpic graph rank LOOP1 --divisor '{"v": 1}' --naive_rank
    """
    divisor = scfg.Value(None, type=str, required=True, help='divisor file or inline JSON {vertex: int}')
    naive_rank = scfg.Value(False, isflag=True, help='use the rank of the unsubdivided graph')

    def run(self):
        G = self.load_graph()
        D = self.load_divisor(G)
        return {'rank': D.rank('bn' if self.naive_rank else 'ac')}, EXIT_OK


class GraphReduceConfig(_GraphInput):
    """The q-reduced representative and the firing script that reaches it."""
    divisor = scfg.Value(None, type=str, required=True, help='divisor file or inline JSON')
    base = scfg.Value(None, type=str, help='base vertex q, defaults to the least vertex id')

    def run(self):
        G = self.load_graph()
        D = self.load_divisor(G)
        q = G.base_vertex if self.base is None else self.base
        R, script = D.q_reduce_with_script(q)
        return {
            'base': q,
            'reduced': R.to_dict(),
            'firingScript': dict(zip(G.vertex_ids, script)),
        }, EXIT_OK


class GraphEquivConfig(_GraphInput):
    """Linear equivalence of two divisors with a firing script as witness."""
    divisor = scfg.Value(None, type=str, required=True, help='first divisor')
    other = scfg.Value(None, type=str, required=True, help='second divisor')

    def run(self):
        G = self.load_graph()
        D1 = self.load_divisor(G)
        D2 = self.load_divisor(G, 'other')
        script = D1.firing_script_to(D2) if D1.degree() == D2.degree() else None
        return {
            'equivalent': D1.is_equivalent(D2),
            'firingScript': None if script is None else dict(zip(G.vertex_ids, script)),
        }, EXIT_OK


class GraphJacobianConfig(_GraphInput):
    """Invariant factors of the Jacobian and its order."""

    def run(self):
        G = self.load_graph()
        return {
            'genus': G.genus,
            'invariants': G.jacobian(),
            'order': G.spanning_tree_count(),
        }, EXIT_OK


class GraphCanonicalConfig(_GraphInput):
    """The canonical divisor ``K(v) = valence(v) - 2``."""

    def run(self):
        K = self.load_graph().canonical_divisor()
        return {'canonical': K.to_dict(), 'degree': K.degree()}, EXIT_OK


class GraphRRCheckConfig(_GraphInput):
    """
    Check Riemann-Roch for every divisor class in the degree window.

    Pass negative windows with ``=``, e.g. ``--degree_window=-2..4``.
    """
    degree_window = scfg.Value(None, type=str, help='LO..HI, defaults to -2..2g+2')
    naive_rank = scfg.Value(False, isflag=True, help='check the loop-blind rank instead')

    def run(self):
        from logpic.harness.sweeps import sweep_rr_graph
        cfg = sweep_config(self)
        report = sweep_rr_graph(cfg, [self.load_graph()], rank='bn' if self.naive_rank else 'ac')
        return report, report_status(report)


class GraphSweepConfig(VerbConfig):
    """
    Riemann-Roch over many graphs: every connected multigraph within the
    bounds with ``--exhaustive``, otherwise seeded random ones.
    """
    __epilog__ = """
    Examples:
      logpic graph sweep --exhaustive --max_vertices 3 --max_edges 4
      logpic graph sweep --seed 7 --instances 50 --jobs 4
    """
    seed = scfg.Value(0, type=int, help='seed of the generated graphs')
    instances = scfg.Value(20, type=int, help='number of generated graphs')
    max_vertices = scfg.Value(3, type=int, help='vertex bound')
    max_edges = scfg.Value(4, type=int, help='edge bound')
    exhaustive = scfg.Value(False, isflag=True, help='enumerate every graph within the bounds')
    degree_window = scfg.Value(None, type=str, help='LO..HI, defaults to -2..2g+2')
    naive_rank = scfg.Value(False, isflag=True, help='check the loop-blind rank instead')
    jobs = scfg.Value(1, type=int, help='joblib workers, 1 runs inline')

    def run(self):
        from logpic.harness.sweeps import sweep_rr_graph
        cfg = sweep_config(self, exhaustive=bool(self.exhaustive))
        report = sweep_rr_graph(cfg, rank='bn' if self.naive_rank else 'ac')
        return report, report_status(report)


class GraphModalCLI(scfg.ModalCLI):
    """
    Divisor theory on finite multigraphs.
    """


GraphModalCLI.register(GraphRankConfig, command='rank')
GraphModalCLI.register(GraphReduceConfig, command='reduce')
GraphModalCLI.register(GraphEquivConfig, command='equiv')
GraphModalCLI.register(GraphJacobianConfig, command='jacobian')
GraphModalCLI.register(GraphCanonicalConfig, command='canonical')
GraphModalCLI.register(GraphRRCheckConfig, command='rr-check')
GraphModalCLI.register(GraphSweepConfig, command='sweep')


__cli__ = GraphModalCLI

if __name__ == '__main__':
    """
    CommandLine:
        python -m logpic.cli.graph_cli --help
    """
    __cli__.main()
