import pytest

from logpic.exceptions import InputError, InvalidNodeDatumError
from logpic.monoids import (MonoidElement, MonoidHom, SharpMonoid, hom_apply,
                            is_unit, node_presentation)


def test_sharp_monoid_elements():
    P = SharpMonoid(3)
    assert P.zero().is_zero()
    assert P.generator(1).coords == (0, 1, 0)
    assert P.contains(P.element([1, 2, 3]))
    with pytest.raises(InputError):
        P.element([1, 2])


def test_hom_is_additive():
    h = MonoidHom.from_rows([[1, 2], [0, 3], [1, 1]])
    a = MonoidElement((1, 4))
    b = MonoidElement((2, 0))
    assert hom_apply(h, a + b) == hom_apply(h, a) + hom_apply(h, b)
    assert [e.coords for e in h.images()] == [(1, 0, 1), (2, 3, 1)]


def test_hom_rejects_negative_entries_and_bad_shapes():
    with pytest.raises(InputError):
        MonoidHom.from_rows([[1, -1]])
    with pytest.raises(InputError):
        MonoidHom(2, 1, ((1,),))
    with pytest.raises(InputError):
        hom_apply(MonoidHom.zero(2, 1), MonoidElement((1,)))


def test_node_presentation_requires_nonzero_length():
    pres = node_presentation(MonoidElement((0, 2)))
    assert pres.generators == ['alpha', 'beta', 'p0', 'p1']
    assert pres.relation == 'alpha + beta = 2*p1'
    with pytest.raises(InvalidNodeDatumError):
        node_presentation(MonoidElement((0,)))


def test_semistability_is_defined_over_the_standard_log_point():
    assert is_unit(MonoidElement((1,)))
    assert not is_unit(MonoidElement((3,)))
    with pytest.raises(InputError):
        is_unit(MonoidElement((1, 0)))
