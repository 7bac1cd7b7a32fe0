import pytest
from hypothesis import given, settings, strategies as st

from specrec.complex import Family, OrderFilter, RelativeFaceSet, \
        SimplicialComplex, alexander_dual, as_pair, circuit_cone, complement, \
        cone, disjoint_union, dual, enumerate_complexes, filter_contract, \
        filter_delete, filter_pair, join, pair, squeeze
from specrec.error import InputError

def path3():
    return SimplicialComplex.from_facets('abcd', ['ab', 'bc', 'cd'])

def facet_names(X):
    return sorted("".join(X.names(F)) for F in X.facets())

complexes = st.lists(st.sets(st.sampled_from(range(5)), max_size=4),
        min_size=1, max_size=4).map(
            lambda facets: SimplicialComplex.from_facets(range(5), facets))

def test_path3_counts():
    P = path3()
    assert P.f_vector() == (1, 4, 3)
    assert P.dim() == 1
    assert P.reduced_euler_char() == 0
    assert facet_names(P) == ['ab', 'bc', 'cd']

def test_void_is_not_empty_face():
    void = SimplicialComplex.void('ab')
    empty = SimplicialComplex.from_facets('ab', [[]])
    assert void != empty
    assert void.is_void and not empty.is_void
    assert void.dim() is None
    assert empty.dim() == -1
    assert empty.f_vector() == (1,)
    assert void.loops() == ('a', 'b')

def test_delete_contract():
    P = path3()
    assert P.delete('b') == SimplicialComplex.from_facets('acd', ['a', 'cd'])
    assert P.contract('b') == SimplicialComplex.from_facets('acd', ['a', 'c'])
    assert P.contract('a') == SimplicialComplex.from_facets('bcd', ['b'])

def test_contract_loop_is_void():
    X = SimplicialComplex.from_facets('ab', ['a'])
    assert X.is_loop('b')
    assert X.contract('b').is_void
    assert X.delete('b') == SimplicialComplex.from_facets('a', ['a'])

def test_isthmus():
    coned = cone('v', path3())
    assert coned.is_isthmus('v')
    assert coned.delete('v') == coned.contract('v')
    assert not path3().is_isthmus('a')
    assert not SimplicialComplex.void('a').is_isthmus('a')

def test_squeeze():
    assert squeeze(0b1011, 1) == 0b101
    assert squeeze(0b1011, 0) == 0b101
    assert squeeze(0b1, 0) == 0

def test_star():
    assert facet_names(path3().star('b')) == ['ab', 'bc']

def test_skeleta():
    X = SimplicialComplex.from_facets('abcd', ['abc', 'cd'])
    assert facet_names(X.skeleton(0)) == ['a', 'b', 'c', 'd']
    assert facet_names(X.pure_skeleton(2)) == ['abc']
    assert facet_names(X.pure_skeleton(1)) == ['ab', 'ac', 'bc', 'cd']

def test_unknown_vertex():
    with pytest.raises(InputError):
        SimplicialComplex.from_facets('ab', ['ac'])
    with pytest.raises(InputError):
        path3().delete('z')

def test_too_many_vertices():
    with pytest.raises(InputError):
        SimplicialComplex.void(range(65))

def test_not_downward_closed():
    with pytest.raises(InputError):
        SimplicialComplex('ab', [0, 3])

def test_filter_from_minimal():
    F = OrderFilter.from_minimal('abc', ['ab'])
    assert len(F) == 2
    assert F.minimal() == [0b011]
    with pytest.raises(InputError):
        OrderFilter('ab', [1])

def test_involutions():
    count = 0
    for X in enumerate_complexes('abc'):
        count += 1
        assert dual(dual(X)) == X
        assert complement(complement(X)) == X
        assert alexander_dual(alexander_dual(X)) == X
        assert isinstance(alexander_dual(X), SimplicialComplex)
    assert count == 19

def test_complement_of_pair_rejected():
    with pytest.raises(InputError):
        complement(as_pair(path3()))

def test_join():
    two = SimplicialComplex.from_facets('ab', ['a', 'b'])
    one = SimplicialComplex.from_facets('c', ['c'])
    assert join(two, one) == SimplicialComplex.from_facets('abc', ['ac', 'bc'])
    assert isinstance(join(as_pair(two), one), RelativeFaceSet)
    with pytest.raises(InputError):
        join(two, two)

def test_join_with_void():
    two = SimplicialComplex.from_facets('ab', ['a', 'b'])
    assert join(two, SimplicialComplex.void('c')).is_void

def test_disjoint_union():
    two = SimplicialComplex.from_facets('a', ['a'])
    other = SimplicialComplex.from_facets('b', ['b'])
    assert disjoint_union(two, other) == \
            SimplicialComplex.from_facets('ab', ['a', 'b'])
    with pytest.raises(InputError):
        disjoint_union(two, SimplicialComplex.void('b'))

def test_circuit_cone():
    X = SimplicialComplex.from_facets('a', ['a'])
    coned = circuit_cone('xy', X)
    assert coned.ambient == ('a', 'x', 'y')
    assert sorted("".join(coned.names(F)) for F in coned.faces) == \
            ['axy', 'xy']

def test_pairs():
    P = path3()
    sub = SimplicialComplex.from_facets('abcd', ['ab', 'c'])
    diff = pair(P, sub)
    assert sorted("".join(diff.names(F)) for F in diff.faces) == \
            ['bc', 'cd', 'd']
    with pytest.raises(InputError):
        pair(sub, P)

def test_filter_pair():
    big = OrderFilter.from_minimal('ab', ['a', 'b'])
    small = OrderFilter.from_minimal('ab', ['ab'])
    diff = filter_pair(big, small)
    assert sorted("".join(diff.names(F)) for F in diff.faces) == ['a', 'b']

def test_family_ops():
    K = Family.from_names((1, 2, 3, 4), 2, [(1, 2), (1, 3), (1, 4)])
    assert len(K.boundary()) == 4
    assert K.contract(1) == Family((2, 3, 4), 1, [0b001, 0b010, 0b100])
    assert len(K.delete(1)) == 0
    assert K.generated_complex() == SimplicialComplex.from_facets(
            (1, 2, 3, 4), [(1, 2), (1, 3), (1, 4)])
    with pytest.raises(InputError):
        Family((1, 2), 2, [0b1])

def test_family_of_complex():
    F = Family.of_complex(path3(), 1)
    assert F.k == 2
    assert len(F) == 3

@settings(max_examples=60, deadline=None)
@given(complexes)
def test_face_counts_split(X):
    for e in X.ambient:
        minus = X.delete(e)
        slash = X.contract(e)
        for i in range(-1, 5):
            assert X.f(i) == minus.f(i) + slash.f(i - 1)

@settings(max_examples=60, deadline=None)
@given(complexes)
def test_euler_characteristic_splits(X):
    for e in X.ambient:
        assert X.reduced_euler_char() == X.delete(e).reduced_euler_char() - \
                X.contract(e).reduced_euler_char()

def test_filter_delete_contract():
    F = OrderFilter.from_minimal('ab', ['ab'])
    assert len(filter_delete(F, 'a')) == 0
    assert filter_contract(F, 'a') == OrderFilter.from_minimal('b', ['b'])
    everything = OrderFilter.from_minimal('abc', [[]])
    assert filter_contract(everything, 'b') == \
            OrderFilter.from_minimal('ac', [[]])
    D = dual(path3())
    assert D.delete('a') == dual(path3().contract('a'))
    for e in D.ambient:
        assert D.delete(e).faces <= D.contract(e).faces

def test_join_commutes_with_minors():
    gamma = SimplicialComplex.from_facets('xy', ['x', 'y'])
    for X in enumerate_complexes('abc'):
        joined = join(X, gamma)
        for e in X.ambient:
            assert join(X.delete(e), gamma) == joined.delete(e)
            assert join(X.contract(e), gamma) == joined.contract(e)

def test_skeleta_commute_with_minors():
    for X in enumerate_complexes('abcd'):
        for s in range(-1, 4):
            skel = X.skeleton(s)
            pure = X.pure_skeleton(s)
            assert pure.faces_of_dim(s) == X.faces_of_dim(s)
            for e in X.ambient:
                assert X.delete(e).skeleton(s) == skel.delete(e)
                assert X.contract(e).skeleton(s - 1) == skel.contract(e)
                assert X.delete(e).faces_of_dim(s) == \
                        pure.delete(e).faces_of_dim(s)
                assert X.contract(e).faces_of_dim(s - 1) == \
                        pure.contract(e).faces_of_dim(s - 1)

@settings(max_examples=60, deadline=None)
@given(complexes, complexes)
def test_filter_pair_is_difference(X, Y):
    psi = complement(X)
    psi_prime = OrderFilter(psi.ambient, psi.faces & complement(Y).faces)
    diff = filter_pair(psi, psi_prime)
    assert isinstance(diff, RelativeFaceSet)
    assert diff.ambient == psi.ambient
    assert diff.faces == psi.faces - psi_prime.faces
