import pytest

from logpic.exceptions import InputError
from logpic.graph import Multigraph
from logpic.harness import generators, sweeps
from logpic.harness.sweeps import SweepConfig
from logpic.logcurve import LogCurve


def test_generators_are_pure_functions_of_seed_and_index():
    cfg = SweepConfig(seed=7, max_vertices=3, max_edges=4)
    for i in range(5):
        assert generators.gen_graph(cfg, i) == generators.gen_graph(cfg, i)
        assert generators.gen_complex(cfg, i).__json__() == generators.gen_complex(cfg, i).__json__()
    G = generators.gen_graph(cfg, 2)
    assert 1 <= len(G.vertices) <= 3
    assert len(G.edges) <= 4


def test_generated_rational_complexes_are_rational():
    cfg = SweepConfig(seed=2, rational=True, instances=6)
    for C in sweeps.default_complexes(cfg):
        assert C.is_all_rational()


def test_enumerate_graphs_is_up_to_isomorphism():
    assert len(generators.enumerate_graphs(1, 2)) == 3
    assert len(generators.enumerate_graphs(2, 2)) == 6
    graphs = generators.enumerate_graphs(3, 3, loops=False)
    keys = set()
    for G in graphs:
        assert not G.has_loops()
        keys.add(tuple(sorted(G.valence(v) for v in G.vertex_ids)) + (len(G.edges),))
    assert len(graphs) >= len(keys)


def test_sweep_config_validation():
    with pytest.raises(InputError):
        SweepConfig(degree_lo=3, degree_hi=1)
    with pytest.raises(InputError):
        SweepConfig(torus_orders=(0,))
    with pytest.raises(InputError):
        SweepConfig(max_vertices=0)
    assert list(SweepConfig(degree_lo=0).degrees(1)) == [0, 1, 2, 3, 4]


def test_graph_riemann_roch_sweep():
    cfg = SweepConfig(max_vertices=3, max_edges=3, exhaustive=True, degree_lo=-1)
    report = sweeps.sweep_rr_graph(cfg)
    assert report.ok
    assert report.checked > 0
    data = report.__json__()
    assert data['name'] == 'rr-graph[ac]'
    assert 'elapsed' not in data
    assert data['config']['max_vertices'] == 3


def test_loop_blind_rank_is_caught_and_minimized():
    cfg = SweepConfig(degree_lo=0, degree_hi=2)
    report = sweeps.sweep_rr_graph(cfg, [Multigraph.demo('C3'), Multigraph.demo('LOOP1')], rank='bn')
    assert not report.ok
    minimal = report.minimal
    assert minimal['identity'] == 'r(D) - r(K - D) = deg(D) - g + 1'
    # the reported instance rebuilds the offending graph
    assert Multigraph.coerce(minimal['instance']) == Multigraph.demo('LOOP1')


def test_parallel_sweeps_match_serial_sweeps():
    serial = SweepConfig(max_vertices=2, max_edges=3, instances=6, degree_lo=-1, degree_hi=3)
    parallel = SweepConfig(max_vertices=2, max_edges=3, instances=6, degree_lo=-1, degree_hi=3, jobs=2)
    a = sweeps.sweep_rr_graph(serial)
    b = sweeps.sweep_rr_graph(parallel)
    assert a.checked == b.checked
    assert a.ok and b.ok


def test_complex_and_curve_sweeps_on_random_instances():
    cfg = SweepConfig(seed=0, instances=4, max_vertices=2, max_edges=2,
                      max_group_order=3, degree_lo=-1, degree_hi=3)
    for name in ['rr-complex', 'rr-curve', 'specialization']:
        report = sweeps.SWEEPS[name](cfg)
        assert report.ok, report.minimal
        assert report.checked > 0


def test_clifford_sweep_finds_a_hyperelliptic_witness():
    report = sweeps.sweep_clifford(SweepConfig(), [LogCurve.demo('X-B3')])
    assert report.ok
    assert all(w['degree'] == 2 and w['rank'] == 1 for w in report.witnesses)
    assert report.witnesses


def test_ses_sweep_counts_kernel_orders():
    report = sweeps.sweep_ses(SweepConfig(torus_orders=(2, 3)), [LogCurve.demo('X-C3')])
    assert report.ok
    assert report.counters == {'order[m=2]': 2, 'order[m=3]': 3}


def test_roundtrip_sweep_on_generated_curves():
    cfg = SweepConfig(seed=1, instances=6, max_vertices=2, max_edges=3)
    report = sweeps.sweep_roundtrip(cfg)
    assert report.ok
    assert report.checked == 6


def test_smooth_and_direct_rank_sweeps():
    assert sweeps.sweep_smooth(SweepConfig(max_group_order=4)).ok
    cfg = SweepConfig(degree_lo=0, degree_hi=2, torus_orders=(2,))
    report = sweeps.sweep_direct_rank(cfg, [LogCurve.demo('X-NODALCUBIC'), LogCurve.demo('X-P2-MARKED')])
    assert report.ok
    assert report.skipped == 1


@pytest.mark.slow
def test_graph_riemann_roch_over_all_small_multigraphs():
    cfg = SweepConfig(max_vertices=4, max_edges=6, exhaustive=True, degree_lo=-2)
    report = sweeps.sweep_rr_graph(cfg)
    assert report.ok, report.minimal
    assert report.checked > 0


@pytest.mark.slow
@pytest.mark.parametrize('name', ['rr-curve', 'specialization', 'clifford'])
def test_curve_sweeps_on_two_hundred_mixed_instances(name):
    cfg = SweepConfig(seed=7, instances=200, max_group_order=5, degree_lo=-2)
    report = sweeps.SWEEPS[name](cfg)
    assert report.ok, report.minimal
    assert report.checked > 0


@pytest.mark.slow
def test_roundtrip_on_one_hundred_instances():
    report = sweeps.sweep_roundtrip(SweepConfig(seed=7, instances=100))
    assert report.ok, report.minimal
    assert report.checked == 100
