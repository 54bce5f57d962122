import pytest

from logpic.components import ComponentClass, ComponentModel
from logpic.demo.fixtures import CURVE_FIXTURES
from logpic.exceptions import (InputError, InvalidGraphError,
                               InvalidNodeDatumError, UnsupportedModelError)
from logpic.graph import Multigraph
from logpic.logcurve import LogCurve, Node, curve_from_graph
from logpic.monoids import MonoidElement


@pytest.mark.parametrize('key, torus, order', [
    ('X-P2', 3, 1),
    ('X-B2', 3, 3),
    ('X-C3', 2, 2),
    ('X-B3', 2, 4),
    ('X-NODALCUBIC', 3, 3),
])
def test_kernels_have_order_m_to_the_b1(key, torus, order):
    X = LogCurve.demo(key)
    for report in [X.quotient_kernel(torus), X.pic_kernel(torus)]:
        assert report.order == order
        assert report.expected == order
        assert report.ok


def test_twisters_are_log_trivial():
    for key in ['X-B2', 'X-B3', 'X-C3', 'X-ELL3-LOOP']:
        X = LogCurve.demo(key)
        trivial = X.trivial_bundle(torus=3)
        for v in X.component_ids:
            T = X.twister(v, torus=3)
            assert T.degree() == 0
            assert T.is_log_equal(trivial)


def test_gluing_off_the_tree_is_seen_by_log_equality():
    X = LogCurve.demo('X-B2')
    L = X.bundle({}, {'b': 1}, torus=3)
    assert not L.is_log_equal(X.trivial_bundle(torus=3))
    assert L.tensor(L.inverse()).is_log_equal(X.trivial_bundle(torus=3))
    # rescaling one component shifts both gluings
    assert X.bundle({}, {'a': 2, 'b': 2}, torus=3).is_log_equal(X.trivial_bundle(torus=3))
    assert X.bundle({}, {'a': 2}, torus=3).is_log_equal(X.bundle({}, {'b': 1}, torus=3))


def test_tau_is_the_reduced_multidegree():
    X = LogCurve.demo('X-C3')
    L = X.lift_divisor({'v1': 3, 'v2': -1, 'v3': 0})
    assert L.tau() == L.multidegree().q_reduce()
    assert L.tau().is_reduced()


def test_specialization_on_fixtures():
    for key in ['X-B2', 'X-B3', 'X-C3', 'X-NODALCUBIC']:
        X = LogCurve.demo(key)
        for d in range(-1, 2 * X.genus + 1):
            for L in X.bundles_of_degree(d, torus=2):
                assert L.comb_rank() <= L.multidegree().rank_ac()


def test_smooth_elliptic_bundles():
    X = LogCurve.demo('X-ELL5')
    for d in range(1, 4):
        for L in X.bundles_of_degree(d):
            assert L.comb_rank() == d - 1
    K = X.omega_log()
    assert K.degree() == 0
    assert K.comb_rank() == 0


def test_clifford_bound_on_special_bundles():
    X = LogCurve.demo('X-B3')
    g = X.genus
    assert g == 2
    for d in range(0, 2 * g - 1):
        for L in X.bundles_of_degree(d):
            if L.has_comb_effective_rep() and L.is_special():
                assert 2 * L.comb_rank() <= d


def test_direct_rank_agrees_on_small_curves():
    for key in ['X-B2', 'X-NODALCUBIC']:
        X = LogCurve.demo(key)
        for d in range(0, 3):
            for L in X.bundles_of_degree(d, torus=2):
                assert L.comb_rank_direct() == L.comb_rank(), (key, L)


def test_rank_needs_vertical_semistable_curves():
    with pytest.raises(UnsupportedModelError) as info:
        LogCurve.demo('X-P2-MARKED').trivial_bundle().comb_rank()
    assert 'vertical' in str(info.value)
    X = LogCurve.demo('X-B2').with_lengths({'a': [2]})
    assert not X.is_semistable()
    with pytest.raises(UnsupportedModelError):
        X.trivial_bundle().comb_rank()
    with pytest.raises(UnsupportedModelError):
        X.twister('v1')


def test_node_length_must_be_nonzero():
    comps = {'c': ComponentModel.rational(['x', 'y'])}
    with pytest.raises(InvalidNodeDatumError) as info:
        LogCurve(comps, [Node('n', (('c', 'x'), ('c', 'y')), MonoidElement((0,)))])
    assert info.value.location == '/nodes/0/length'
    with pytest.raises(InvalidGraphError):
        LogCurve({'a': ComponentModel.rational([]), 'b': ComponentModel.rational([])}, [])


def test_bundle_input_errors():
    X = LogCurve.demo('X-B2')
    with pytest.raises(InputError):
        X.bundle({'nope': ComponentClass(1)})
    with pytest.raises(InputError):
        X.bundle({}, {'zz': 1}, torus=2)
    with pytest.raises(InputError):
        X.lift_divisor({'v9': 1})
    with pytest.raises(InputError):
        X.twister('v9')


@pytest.mark.parametrize('key', sorted(CURVE_FIXTURES))
def test_curve_complex_roundtrip(key):
    X = LogCurve.demo(key)
    C = X.to_complex()
    assert LogCurve.from_complex(C).isomorphic(X)
    assert LogCurve.from_complex(C).to_complex().isomorphic(C)
    for phi in C.automorphisms():
        psi = LogCurve.from_complex_automorphism(phi)
        assert X.check_automorphism(psi) == []


def test_maximally_degenerate_curve_from_graph():
    X = curve_from_graph(Multigraph.demo('B3'))
    assert X.is_maximally_degenerate()
    assert X.dual_graph().b1 == 2
    with pytest.raises(InputError):
        curve_from_graph(Multigraph.from_edges({'v': 1}, []))


def test_comb_effectivity_is_componentwise():
    assert LogCurve.demo('X-NODALCUBIC').lift_divisor({'v': 0}).is_comb_effective()
    X = LogCurve.demo('X-B2')
    L = X.lift_divisor({'v1': 1, 'v2': -1})
    assert not L.is_comb_effective()
    assert not L.has_comb_effective_rep()
    assert X.trivial_bundle(torus=3).is_comb_effective()
    # gluing plays no role
    assert X.bundle({}, {'b': 1}, torus=3).is_comb_effective()
