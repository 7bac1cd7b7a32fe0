"""Input documents and the catalog of named instances.

Documents are JSON objects with a ``kind`` of complex, filter, matroid or
family-pair.  Vertex names keep the order in which they are listed.
"""

import itertools
import os
import re

import networkx
import simplejson as json

from specrec.complex import Family, OrderFilter, SimplicialComplex, \
        MAX_VERTICES
from specrec.error import InputError, ParseError
from specrec import matroid as matroids
from specrec.shifted import FamilyPair
from specrec.util import get_logger

log = get_logger("specrec.catalog")

KINDS = ('complex', 'filter', 'matroid', 'family-pair')

def _require(doc, key, kind=list):
    if key not in doc:
        raise ParseError("%s document is missing '%s'" % (doc['kind'], key))
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError("'%s' must be a %s" % (key, kind.__name__))
    return value

def _vertex(v):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError("vertex names must be strings or integers: %r" % (v,))
    return v

def _vertices(doc, key, max_vertices):
    vertices = [_vertex(v) for v in _require(doc, key)]
    if len(vertices) > max_vertices:
        raise ParseError("at most %d vertices are allowed, got %d" %
                (max_vertices, len(vertices)))
    if len(set(vertices)) != len(vertices):
        raise ParseError("'%s' lists a vertex twice" % key)
    return vertices

def _sets(doc, key):
    out = []
    for member in _require(doc, key):
        if not isinstance(member, list):
            raise ParseError("every entry of '%s' must be a list" % key)
        out.append([_vertex(v) for v in member])
    return out

def from_document(doc, max_vertices=MAX_VERTICES):
    """Build the object a parsed document describes."""
    if not isinstance(doc, dict):
        raise ParseError("a document must be a JSON object")
    kind = doc.get('kind')
    if kind not in KINDS:
        raise ParseError("unknown document kind: %r" % (kind,))

    try:
        if kind == 'complex':
            return SimplicialComplex.from_facets(
                    _vertices(doc, 'vertices', max_vertices),
                    _sets(doc, 'facets'))
        if kind == 'filter':
            return OrderFilter.from_minimal(
                    _vertices(doc, 'vertices', max_vertices),
                    _sets(doc, 'minimal'))
        if kind == 'family-pair':
            ground = _vertices(doc, 'ground', max_vertices)
            k = _require(doc, 'k', int)
            return FamilyPair(Family.from_names(ground, k, _sets(doc, 'K')),
                    Family.from_names(ground, k - 1, _sets(doc, 'Kprime')))
        return _matroid(doc, max_vertices)
    except ParseError:
        raise
    except InputError as e:
        raise ParseError(str(e))

def _matroid(doc, max_vertices):
    mtype = doc.get('type')
    if mtype == 'bases':
        return matroids.from_bases(_vertices(doc, 'ground', max_vertices),
                _sets(doc, 'bases'))
    if mtype == 'uniform':
        r = _require(doc, 'r', int)
        n = _require(doc, 'n', int)
        if n > max_vertices:
            raise ParseError("at most %d elements are allowed" % max_vertices)
        return matroids.uniform(r, n)
    if mtype == 'graphic':
        edges = _sets(doc, 'edges')
        names = doc.get('names')
        if names is not None:
            names = [_vertex(v) for v in names]
        if len(edges) > max_vertices:
            raise ParseError("at most %d elements are allowed" % max_vertices)
        return matroids.graphic(edges, names)
    raise ParseError("unknown matroid type: %r" % (mtype,))

def to_document(obj):
    """Inverse of from_document; matroids are written by their bases."""
    if isinstance(obj, SimplicialComplex):
        return {'kind': 'complex', 'vertices': list(obj.ambient),
                'facets': [list(obj.names(F)) for F in obj.facets()]}
    if isinstance(obj, OrderFilter):
        return {'kind': 'filter', 'vertices': list(obj.ambient),
                'minimal': [list(obj.names(F)) for F in obj.minimal()]}
    if isinstance(obj, FamilyPair):
        return {'kind': 'family-pair', 'k': obj.k,
                'ground': list(obj.ambient),
                'K': [list(obj.K.names(F)) for F in obj.K.sorted_members()],
                'Kprime': [list(obj.Kprime.names(F))
                    for F in obj.Kprime.sorted_members()]}
    if isinstance(obj, matroids.Matroid):
        return {'kind': 'matroid', 'type': 'bases',
                'ground': list(obj.ground),
                'bases': [[obj.ground[j] for j in range(obj.n) if B & (1 << j)]
                    for B in sorted(obj.bases)]}
    raise InputError("cannot serialize %r" % (obj,))

def loads(text, max_vertices=MAX_VERTICES):
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise ParseError("invalid JSON: %s" % e)
    return from_document(doc, max_vertices)

def dumps(obj):
    return json.dumps(to_document(obj), sort_keys=True)

# named instances

def matching_complex(G, name=None):
    """Vertices are the edges of G, faces its partial matchings."""
    if name is None:
        name = lambda u, v: "%s%s" % (u, v)
    edges = sorted(tuple(sorted(e)) for e in G.edges())
    ambient = [name(u, v) for (u, v) in edges]
    facets = []
    for r in range(1, len(edges) + 1):
        found = False
        for combo in itertools.combinations(range(len(edges)), r):
            if networkx.is_matching(G, set(edges[j] for j in combo)):
                facets.append([ambient[j] for j in combo])
                found = True
        if not found:
            break
    return {'kind': 'complex', 'vertices': ambient, 'facets': facets}

def _chessboard(rows, cols):
    G = networkx.complete_bipartite_graph(rows, cols)
    return matching_complex(G,
            lambda u, v: "r%dc%d" % (u + 1, v - rows + 1))

def _complex(vertices, facets):
    return {'kind': 'complex', 'vertices': list(vertices),
            'facets': [list(f) for f in facets]}

def _overlapping_union():
    return _complex('abcde', ['ab', 'ac', 'ad', 'ae', 'bc', 'bd', 'de'])

CATALOG = {
    'path3': lambda: _complex('abcd', ['ab', 'bc', 'cd']),
    'single-vertex': lambda: _complex('a', ['a']),
    'two-points': lambda: _complex('ab', ['a', 'b']),
    'circle': lambda: _complex('abc', ['ab', 'bc', 'ac']),
    'overlapping-union': _overlapping_union,
    'example-6.2': _overlapping_union,
    'matching-k5': lambda: matching_complex(
        networkx.complete_graph(range(1, 6))),
    'chessboard-2x3': lambda: _chessboard(2, 3),
    'star-k13': lambda: {'kind': 'complex', 'vertices': [1, 2, 3, 4],
        'facets': [[1, 2], [1, 3], [1, 4]]},
    'k5-minus-edge': lambda: {'kind': 'matroid', 'type': 'graphic',
        'edges': [list(e) for e in itertools.combinations(range(1, 6), 2)
            if e != (4, 5)]},
}

UNIFORM_RE = re.compile(r'^u-(\d+)-(\d+)$')

def catalog_names():
    return sorted(CATALOG) + ['u-<r>-<n>']

def catalog_document(name):
    if name in CATALOG:
        return CATALOG[name]()
    m = UNIFORM_RE.match(name)
    if m:
        return {'kind': 'matroid', 'type': 'uniform',
                'r': int(m.group(1)), 'n': int(m.group(2))}
    raise ParseError("unknown catalog instance: %s" % name)

def catalog(name, max_vertices=MAX_VERTICES):
    return from_document(catalog_document(name), max_vertices)

def load(source, max_vertices=MAX_VERTICES):
    """An existing file is parsed; anything else is a catalog name."""
    if os.path.isfile(source):
        log.debug("reading %s" % source)
        try:
            with open(source) as f:
                text = f.read()
        except IOError as e:
            raise InputError("unable to read %s: %s" % (source, e))
        return loads(text, max_vertices)
    return catalog(source, max_vertices)
