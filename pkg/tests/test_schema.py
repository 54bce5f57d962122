import orjson
import pytest
from pydantic import ValidationError

from logpic.demo.fixtures import emit_fixtures, fixture_names, load_fixture
from logpic.exceptions import InputError, InvalidNodeDatumError
from logpic.logcurve import LogCurve
from logpic.schema import (ComplexSchema, CurveSchema, GraphSchema, load_bundle,
                           load_complex, load_complex_divisor, load_curve,
                           load_graph, load_graph_divisor, validate_document)


@pytest.fixture
def nodal_curve_doc():
    return {
        'monoidRank': 1,
        'components': {'v': {'genus': 0, 'points': ['x1', 'x2', 'y']}},
        'nodes': [{'id': 'l', 'branches': [['v', 'x1'], ['v', 'x2']], 'length': [1]}],
    }


def test_valid_curve_document(nodal_curve_doc):
    X = CurveSchema.model_validate(nodal_curve_doc).build()
    assert X.isomorphic(LogCurve.demo('X-NODALCUBIC'))


@pytest.mark.parametrize('broken, location', [
    pytest.param({'colour': 'red'}, '/colour', id='unknown-key'),
    pytest.param({'monoidRank': 'one'}, '/monoidRank', id='bad-type'),
    pytest.param({'components': None}, '/components', id='null-required-field'),
    pytest.param({'nodes': [{'id': 'l', 'branches': [['v', 'x1']]}]}, '/nodes/0/branches',
                 id='short-branches'),
])
def test_invalid_curve_documents_carry_locations(nodal_curve_doc, broken, location):
    doc = {**nodal_curve_doc, **broken}
    with pytest.raises(ValidationError):
        CurveSchema.model_validate(doc)
    with pytest.raises(InputError) as info:
        validate_document(CurveSchema, doc)
    assert info.value.location.startswith(location)


def test_semantic_errors_carry_locations(nodal_curve_doc):
    doc = {**nodal_curve_doc}
    doc['nodes'] = [{'id': 'l', 'branches': [['v', 'x1'], ['v', 'x2']], 'length': [0]}]
    with pytest.raises(InvalidNodeDatumError) as info:
        validate_document(CurveSchema, doc).build()
    assert info.value.location == '/nodes/0/length'

    doc = {'vertices': ['a'], 'edges': [],
           'components': {'a': {'genus': 1, 'group': [3], 'points': [
               {'id': 'p0', 'class': [0]}, {'id': 'p1', 'class': [1]}]}},
           'attach': {}}
    with pytest.raises(InputError) as info:
        validate_document(ComplexSchema, doc).build()
    assert info.value.location.startswith('/components/a')


def test_graph_documents_accept_bare_vertex_ids():
    G = GraphSchema.model_validate({
        'vertices': ['a', {'id': 'b', 'weight': 2}],
        'edges': [{'id': 'e', 'halves': [['e0', 'a'], ['e1', 'b']]}],
    }).build()
    assert G.genus == 2
    assert G.edges[0].length.coords == (1,)


def test_divisor_documents():
    G = load_fixture('C3')
    assert load_graph_divisor(G, {'v2': -1}).coeffs == (0, -1, 0)
    with pytest.raises(InputError) as info:
        load_graph_divisor(G, {'v9': 1})
    assert info.value.location == '/v9'
    with pytest.raises(InputError):
        load_graph_divisor(G, {'v1': 1.5})
    C = load_fixture('CPX-ELL5')
    assert load_complex_divisor(C, {'v': {'p2': 1}}).degree() == 1
    with pytest.raises(InputError) as info:
        load_complex_divisor(C, {'v': {'q': 1}})
    assert info.value.location == '/v/q'


def test_bundle_documents():
    X = load_fixture('X-B2')
    L = load_bundle(X, {'classes': {'v1': {'degree': 1}}, 'gluing': {'b': 2}}, torus=3)
    assert L.multidegree().coeffs == (1, 0)
    assert L.gluing == (0, 2)
    with pytest.raises(InputError) as info:
        load_bundle(X, {'classes': {'w': {'degree': 1}}})
    assert info.value.location == '/classes/w'


def test_emitted_fixtures_load_back(tmp_path):
    fpaths = emit_fixtures(tmp_path)
    assert len(fpaths) == len(fixture_names())
    loaders = {'C3': load_graph, 'CPX-ELL3-LOOP': load_complex, 'X-B3': load_curve}
    for key, loader in loaders.items():
        obj = loader(tmp_path / f'{key}.json')
        assert obj.__json__() == load_fixture(key).__json__()
    # emission is byte stable
    first = (tmp_path / 'X-B3.json').read_bytes()
    emit_fixtures(tmp_path, keys=['X-B3'])
    assert (tmp_path / 'X-B3.json').read_bytes() == first
    assert orjson.loads(first)['monoidRank'] == 1


def test_unreadable_files_are_input_errors(tmp_path):
    with pytest.raises(InputError):
        load_graph(tmp_path / 'missing.json')
    fpath = tmp_path / 'broken.json'
    fpath.write_text('{"vertices": [')
    with pytest.raises(InputError) as info:
        load_graph(fpath)
    assert info.value.location == '/'
