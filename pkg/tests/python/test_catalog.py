import networkx
import pytest

from specrec.catalog import catalog, catalog_document, catalog_names, dumps, \
        from_document, load, loads, matching_complex, to_document
from specrec.complex import OrderFilter, SimplicialComplex
from specrec.error import InputError, ParseError
from specrec.matroid import Matroid, uniform
from specrec.shifted import FamilyPair

def test_every_instance_reloads():
    for name in catalog_names():
        if name.startswith('u-<'):
            continue
        X = catalog(name)
        assert loads(dumps(X)) == X

def test_named_instances():
    assert catalog('path3').f_vector() == (1, 4, 3)
    k5 = catalog('matching-k5')
    assert k5.f_vector() == (1, 10, 15)
    board = catalog('chessboard-2x3')
    assert board.f_vector() == (1, 6, 6)
    assert 'r1c1' in board.ambient
    assert catalog('star-k13').ambient == (1, 2, 3, 4)
    assert catalog('example-6.2') == catalog('overlapping-union')
    assert catalog('overlapping-union').f_vector() == (1, 5, 7)
    K = catalog('k5-minus-edge')
    assert isinstance(K, Matroid)
    assert '45' not in K.ground and len(K.ground) == 9

def test_uniform_names():
    M = catalog('u-1-2')
    assert isinstance(M, Matroid)
    assert M == uniform(1, 2)
    with pytest.raises(ParseError):
        catalog('u-3-2')

def test_unknown_name():
    with pytest.raises(ParseError):
        catalog_document('no-such-thing')
    with pytest.raises(ParseError):
        load('no-such-thing')

def test_matching_complex_keeps_small_matchings():
    G = networkx.path_graph(4)
    doc = matching_complex(G)
    assert doc['vertices'] == ['01', '12', '23']
    assert ['01', '23'] in doc['facets']
    assert ['12'] in doc['facets']

def test_documents():
    X = from_document({'kind': 'filter', 'vertices': ['a', 'b'],
        'minimal': [['a']]})
    assert isinstance(X, OrderFilter)
    assert len(X) == 2

    P = from_document({'kind': 'family-pair', 'ground': [1, 2, 3], 'k': 2,
        'K': [[1, 2], [1, 3]], 'Kprime': [[1]]})
    assert isinstance(P, FamilyPair)
    assert to_document(P)['K'] == [[1, 2], [1, 3]]

    M = from_document({'kind': 'matroid', 'type': 'graphic',
        'edges': [[1, 2], [2, 3]], 'names': ['x', 'y']})
    assert M.ground == ('x', 'y')
    assert to_document(M) == {'kind': 'matroid', 'type': 'bases',
            'ground': ['x', 'y'], 'bases': [['x', 'y']]}

def test_void_document():
    X = from_document({'kind': 'complex', 'vertices': ['a'], 'facets': []})
    assert X.is_void

@pytest.mark.parametrize("doc", [
    [],
    {'kind': 'poset'},
    {'kind': 'complex', 'vertices': ['a']},
    {'kind': 'complex', 'vertices': ['a', 'a'], 'facets': []},
    {'kind': 'complex', 'vertices': ['a'], 'facets': [['b']]},
    {'kind': 'complex', 'vertices': ['a'], 'facets': ['a']},
    {'kind': 'complex', 'vertices': [1.5], 'facets': []},
    {'kind': 'complex', 'vertices': [True], 'facets': []},
    {'kind': 'matroid', 'type': 'bases', 'ground': ['a', 'b', 'c', 'd'],
        'bases': [['a', 'b'], ['c', 'd']]},
    {'kind': 'matroid', 'type': 'spiky'},
    {'kind': 'family-pair', 'ground': [1, 2], 'k': '2', 'K': [],
        'Kprime': []},
])
def test_bad_documents(doc):
    with pytest.raises(ParseError):
        from_document(doc)

def test_vertex_limit():
    doc = {'kind': 'complex', 'vertices': list(range(10)), 'facets': []}
    with pytest.raises(ParseError):
        from_document(doc, max_vertices=8)
    assert isinstance(from_document(doc, max_vertices=10), SimplicialComplex)

def test_bad_json():
    with pytest.raises(ParseError):
        loads("{not json")
    assert issubclass(ParseError, InputError)

def test_load_file(tmp_path):
    path = tmp_path / "two.json"
    path.write_text(dumps(catalog('two-points')))
    assert load(str(path)) == catalog('two-points')
