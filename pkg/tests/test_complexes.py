import pytest

from logpic.complexes import MetrizedComplex, complex_from_parts
from logpic.components import ComponentClass, ComponentModel
from logpic.divisors import GraphDivisor
from logpic.exceptions import InputError, UnsupportedModelError
from logpic.graph import Multigraph
from logpic.harness.generators import enumerate_graphs
from logpic.harness.sweeps import SweepConfig, sweep_rr_complex


def test_smooth_elliptic_ranks():
    C = MetrizedComplex.demo('CPX-ELL5')
    assert C.rank(C.class_of({})) == 0
    assert C.rank(C.class_of({'v': {'p1': 1, 'p4': -1}})) == -1
    for d in range(1, 4):
        for c in C.classes_of_degree(d):
            assert C.rank(c) == d - 1


def test_loop_subdivision_changes_the_rank():
    C = MetrizedComplex.demo('CPX-LOOP-RAT')
    y = C.class_of({'v': {'y': 1}})
    assert C.rank(y) == 0
    assert C.rank_naive(y) == 1


def test_rational_complex_rank_equals_graph_rank():
    for G in enumerate_graphs(2, 3):
        C = MetrizedComplex.rational(G)
        for d in range(-1, 4):
            for R in C.classes_of_degree(d):
                D = GraphDivisor(G, R.mdeg())
                assert C.rank(R) == D.rank_ac(), (G, D)


@pytest.mark.parametrize('key', ['CPX-C3-RAT', 'CPX-B3-RAT', 'CPX-LOOP-RAT', 'CPX-ELL5', 'CPX-ELL3-LOOP'])
def test_riemann_roch_on_fixtures(key):
    C = MetrizedComplex.demo(key)
    K = C.canonical_class()
    assert K.degree() == 2 * C.genus - 2
    report = sweep_rr_complex(SweepConfig(degree_lo=-1, degree_hi=2 * C.genus), [C])
    assert report.ok
    assert report.checked > 0


def test_canonical_representative_is_in_the_canonical_class():
    C = MetrizedComplex.demo('CPX-ELL3-LOOP')
    K, rep = C.canonical()
    assert rep is not None
    assert C.class_of(rep) == K


def test_firing_vectors_move_chips_across_edges():
    C = MetrizedComplex.demo('CPX-B2-RAT')
    F = C.firing_vectors()
    assert F['v1'].mdeg() == (-2, 2)
    assert C.is_equivalent(F['v1'], C.zero_class())
    c = C.class_from_dict({'v1': ComponentClass(2), 'v2': ComponentClass(-1)})
    assert C.class_key(c)[0] == (0, 1)


def test_equivalence_sees_torsion():
    C = MetrizedComplex.demo('CPX-ELL5')
    assert not C.is_equivalent(C.class_of({'v': {'p1': 1}}), C.class_of({'v': {'p2': 1}}))
    assert C.is_equivalent(C.class_of({'v': {'p1': 1, 'p4': 1}}), C.class_of({'v': {'p0': 2}}))


def test_validation_errors():
    G = Multigraph.demo('LOOP1')
    with pytest.raises(InputError) as info:
        MetrizedComplex(G, {'v': ComponentModel.rational(['x'])}, {'l:0': 'x', 'l:1': 'x'})
    assert 'duplicate attachment point' in str(info.value)
    with pytest.raises(InputError) as info:
        MetrizedComplex(G, {'v': ComponentModel.elliptic([3])}, {'l:0': 'p0', 'l:1': 'p1'})
    assert info.value.location == '/components/v/genus'
    with pytest.raises(InputError):
        MetrizedComplex(G, {'v': ComponentModel.rational(['x', 'y'])}, {'l:0': 'x'})


def test_marked_complexes_refuse_ranks():
    C = MetrizedComplex.demo('CPX-P2-MARKED')
    with pytest.raises(UnsupportedModelError):
        C.rank(C.zero_class())


def test_higher_genus_components_refuse_ranks():
    C = complex_from_parts({'a': ComponentModel.higher_genus(2, ['x'])}, [])
    assert C.genus == 2
    with pytest.raises(UnsupportedModelError):
        C.rank(C.zero_class())


def test_lifted_automorphisms_are_automorphisms():
    for key in ['CPX-B2-RAT', 'CPX-C3-RAT', 'CPX-ELL3-LOOP', 'CPX-P2-MARKED']:
        C = MetrizedComplex.demo(key)
        auts = C.automorphisms()
        assert auts
        for phi in auts:
            assert C.check_automorphism(phi) == []
    assert len(MetrizedComplex.demo('CPX-B2-RAT').automorphisms()) == 4
    # the marked point pins its vertex
    assert len(MetrizedComplex.demo('CPX-P2-MARKED').automorphisms()) == 1


def test_check_automorphism_reports_attachment_mismatch():
    C = MetrizedComplex.demo('CPX-B2-RAT')
    phi = C.identity_automorphism()
    bad = type(phi)(phi.graph, {**phi.point_maps, 'v1': {'a:0': 'b:0', 'b:0': 'a:0'}})
    problems = C.check_automorphism(bad)
    assert any(p.startswith('attachment compatibility') for p in problems)
