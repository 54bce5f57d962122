import pytest

from logpic.components import AbelianGroup, ComponentClass, ComponentModel
from logpic.exceptions import InputError, UnsupportedModelError


def test_abelian_group_arithmetic():
    G = AbelianGroup((2, 4))
    assert G.order == 8
    assert len(list(G.elements())) == 8
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 3)
    assert G.scale(3, (1, 1)) == (1, 3)
    assert not G.contains((0,))


def test_rational_classes_are_degrees():
    P = ComponentModel.rational(['x', 'y'])
    assert P.class_of({'x': 3, 'y': -1}) == ComponentClass(2)
    assert [P.h0(ComponentClass(d)) for d in [-2, -1, 0, 1, 2]] == [0, 0, 1, 2, 3]
    assert list(P.effective_classes(-1)) == []
    assert P.canonical_class() == ComponentClass(-2)


@pytest.mark.parametrize('factors', [(2,), (3,), (5,), (2, 2)])
def test_elliptic_sections_follow_riemann_roch(factors):
    E = ComponentModel.elliptic(factors)
    K = E.canonical_class()
    for d in range(-2, 4):
        for c in E.classes(d):
            # h0(c) - h0(K - c) = deg c for a genus-1 curve
            assert E.h0(c) - E.h0(E.sub(K, c)) == d


def test_elliptic_roster_must_cover_the_group():
    with pytest.raises(InputError):
        ComponentModel(genus=1, group=AbelianGroup((3,)), points={'a': (0,), 'b': (1,)})
    with pytest.raises(InputError):
        ComponentModel.elliptic([1])
    with pytest.raises(InputError):
        ComponentModel(genus=0, group=AbelianGroup((2,)))


def test_representatives_land_in_their_class():
    E = ComponentModel.elliptic([5])
    for d in range(1, 4):
        for c in E.classes(d):
            assert E.class_of(E.representative(c)) == c
    P = ComponentModel.rational(['a', 'b'])
    assert P.representative(ComponentClass(2), avoid=['a']) == {'b': 2}


def test_higher_genus_components_are_data_only():
    H = ComponentModel.higher_genus(2, ['x'])
    assert H.genus == 2
    with pytest.raises(UnsupportedModelError):
        H.h0(ComponentClass(1))
