import pytest

from logpic.exceptions import BoundExceededError, InvalidGraphError
from logpic.graph import Edge, Multigraph, Vertex


@pytest.mark.parametrize('key, b1, jac', [
    ('K1', 0, []),
    ('P2', 0, []),
    ('C3', 1, [3]),
    ('B2', 1, [2]),
    ('B3', 2, [3]),
    ('LOOP1', 1, []),
])
def test_fixture_invariants(key, b1, jac):
    G = Multigraph.demo(key)
    assert G.b1 == b1
    assert G.jacobian() == jac


def test_jacobian_order_is_the_spanning_tree_count():
    for key in ['K1', 'P2', 'C3', 'B2', 'B3', 'LOOP1']:
        G = Multigraph.demo(key)
        order = 1
        for d in G.jacobian():
            order *= d
        assert order == G.spanning_tree_count()


def test_laplacian_rows_sum_to_zero_and_loops_do_not_contribute():
    G = Multigraph.from_edges(['a', 'b'], [('e', 'a', 'b'), ('l', 'a', 'a'), ('f', 'a', 'b')])
    L = G.laplacian()
    assert L.tolist() == [[2, -2], [-2, 2]]
    assert G.valence('a') == 4
    assert G.canonical_divisor().coeffs == (2, 0)


def test_genus_adds_weights():
    G = Multigraph.from_edges({'a': 1, 'b': 2}, [('e', 'a', 'b')])
    assert G.b1 == 0
    assert G.genus == 3


def test_invalid_graphs_carry_locations():
    with pytest.raises(InvalidGraphError) as info:
        Multigraph([Vertex('a'), Vertex('a')], [])
    assert info.value.location == '/vertices/1/id'
    with pytest.raises(InvalidGraphError) as info:
        Multigraph([Vertex('a')], [Edge('e', (('h', 'a'), ('h', 'a')))])
    assert info.value.location == '/edges/0/halves'
    with pytest.raises(InvalidGraphError) as info:
        Multigraph([Vertex('a')], [Edge('e', (('h0', 'a'), ('h1', 'z')))])
    assert info.value.location == '/edges/0/halves/1/1'
    with pytest.raises(InvalidGraphError):
        Multigraph.from_edges(['a', 'b'], [])


def test_subdivide_loops_keeps_genus():
    G = Multigraph.from_edges(['v', 'w'], [('l', 'v', 'v'), ('e', 'v', 'w')])
    G2, mapping = G.subdivide_loops()
    assert mapping == {'v': 'v', 'w': 'w'}
    assert 'l/mid' in G2.vertex_ids
    assert G2.genus == G.genus == 1
    assert not G2.has_loops()
    assert sorted(G2.edge_ids) == ['e', 'l/0', 'l/1']


def test_automorphisms_respect_lengths_and_bound():
    assert len(Multigraph.demo('C3').automorphisms()) == 6
    assert len(Multigraph.demo('B3').automorphisms()) == 12
    assert len(Multigraph.demo('B2-N2').automorphisms()) == 2
    for phi in Multigraph.demo('B2').automorphisms():
        assert phi.compose(phi.inverse()).is_identity()
    with pytest.raises(BoundExceededError):
        Multigraph.demo('C3').automorphisms(max_vertices=2)


def test_coerce_accepts_dicts_and_fixture_names():
    data = Multigraph.demo('B2').__json__()
    assert Multigraph.coerce(data) == Multigraph.demo('B2')
    assert Multigraph.coerce('C3') == Multigraph.demo('C3')
