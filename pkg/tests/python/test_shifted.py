import pytest

from specrec.complex import Family, RelativeFaceSet, SimplicialComplex, \
        as_pair, cone, enumerate_complexes
from specrec.error import InputError, PreconditionError
from specrec.laplacian import spectrum_poly
from specrec.shifted import HOLDS, FamilyPair, Partition, check_sdT, \
        degree_sequence, enumerate_shifted, enumerate_shifted_families, \
        family_pair_recursion_check, gm_campaign, grone_merris_scan, \
        is_majorized_by, is_near_cone, is_shifted, majorizes, \
        shifted_closure, shifted_pair_spectrum

GROUND = (1, 2, 3, 4)

def family(k, members, ground=GROUND):
    return Family.from_names(ground, k, members)

def star_pair():
    return FamilyPair(family(2, [(1, 2), (1, 3), (1, 4)]), family(1, []))

def test_partition():
    p = Partition((1, 3, 0, 1, 1))
    assert p.parts == (3, 1, 1, 1)
    assert p.conjugate() == Partition((4, 1, 1))
    assert p.conjugate().conjugate() == p
    assert p.render() == "(3,1,1,1)"
    assert Partition().conjugate() == Partition()
    assert p.size == 6
    with pytest.raises(InputError):
        Partition((2, -1))

def test_majorization():
    assert is_majorized_by(Partition((2, 2)), Partition((3, 1)))
    assert not is_majorized_by(Partition((3, 1)), Partition((2, 2)))
    assert is_majorized_by(Partition((1, 1, 1)), Partition((3,)))
    assert majorizes is is_majorized_by
    assert majorizes(Partition((2, 2)), Partition((3, 1)))
    assert not majorizes(Partition((4,)), Partition((2, 2)))

def test_is_shifted():
    star = SimplicialComplex.from_facets(GROUND, [(1, 2), (1, 3), (1, 4)])
    assert is_shifted(star)
    path = SimplicialComplex.from_facets(GROUND, [(1, 2), (2, 3), (3, 4)])
    assert not is_shifted(path)
    edge = SimplicialComplex.from_facets((1, 2, 3), [(2, 3)])
    assert not is_shifted(edge)
    assert is_shifted(edge, order=(2, 3, 1))
    with pytest.raises(InputError):
        is_shifted(edge, order=(1, 2))

def test_near_cone():
    assert is_near_cone(family(2, [(1, 2), (1, 3), (1, 4)]))
    assert not is_near_cone(family(2, [(1, 2), (2, 3), (3, 4)]))
    assert is_near_cone(family(2, [(1, 2), (1, 3), (2, 3)]), apex=1)

def test_enumerate_shifted_counts():
    assert len(list(enumerate_shifted(1))) == 2
    assert len(list(enumerate_shifted(2))) == 4
    assert len(list(enumerate_shifted(3))) == 9

def test_enumerate_shifted_matches_brute_force():
    for n in range(1, 5):
        ambient = tuple(range(1, n + 1))
        brute = set(X for X in enumerate_complexes(ambient) if is_shifted(X))
        listed = list(enumerate_shifted(n))
        assert len(listed) == len(set(listed))
        assert set(listed) == brute

def test_enumerate_shifted_pure():
    for X in enumerate_shifted(4, pure_dim=1):
        assert all(len(X.names(F)) == 2 for F in X.facets())
    for X in enumerate_shifted(4, max_dim=1):
        assert X.dim() <= 1

def test_enumerate_shifted_families():
    assert len(list(enumerate_shifted_families(3, 2))) == 4
    for K in enumerate_shifted_families(4, 2):
        assert is_shifted(K)
    assert [len(K) for K in enumerate_shifted_families(3, 5)] == [0]
    with pytest.raises(InputError):
        list(enumerate_shifted(8))

def test_shifted_closure():
    X = shifted_closure((1, 2, 3), [0b110])
    assert is_shifted(X)
    assert sorted(X.facets()) == [0b011, 0b101, 0b110]
    with pytest.raises(InputError):
        shifted_closure((1, 2), [0b100])

def test_family_pair_equality():
    K = family(2, [(1, 2), (1, 3)])
    assert FamilyPair(K, family(1, [(1,)])) == \
            FamilyPair(K, family(1, [(1,), (4,)]))
    assert FamilyPair(K, family(1, [(1,)])) != FamilyPair(K, family(1, []))
    with pytest.raises(InputError):
        FamilyPair(K, family(2, []))

def test_degree_sequence():
    d = degree_sequence(star_pair())
    assert d.values == (3, 1, 1, 1)
    assert d.is_vertex_ordered()
    assert d.render() == "d1=3 d2=1 d3=1 d4=1"
    d = degree_sequence(FamilyPair(family(2, [(1, 2), (1, 3)]),
        family(1, [(1,)])))
    assert d.values == (2, 0, 0, 0)

def test_sdt_star():
    report = check_sdT(star_pair())
    assert report.ok
    assert report.render() == "s=(4,1,1) dT=(4,1,1) OK"

def test_sdt_small_pair():
    P = FamilyPair(family(2, [(1, 2), (1, 3)], (1, 2, 3)),
            family(1, [(1,)], (1, 2, 3)))
    assert check_sdT(P).render() == "s=(1,1) dT=(1,1) OK"

def test_sdt_needs_shifted():
    P = FamilyPair(family(2, [(2, 3)], (1, 2, 3)), family(1, [], (1, 2, 3)))
    with pytest.raises(PreconditionError):
        check_sdT(P)

def shifted_pairs(max_vertices, max_k):
    for n in range(1, max_vertices + 1):
        for k in range(1, min(n, max_k) + 1):
            for K in enumerate_shifted_families(n, k):
                boundary = K.boundary().members
                for Kp in enumerate_shifted_families(n, k - 1):
                    yield FamilyPair(K, Family(K.ambient, k - 1,
                        boundary & Kp.members))

def test_sdt_exhaustive():
    count = 0
    for P in shifted_pairs(5, 3):
        assert check_sdT(P).ok, P
        count += 1
    assert count > 200

def test_family_recursion_on_shifted_pairs():
    for P in shifted_pairs(5, 3):
        report = family_pair_recursion_check(P)
        assert report.holds, P
        assert report.degree_holds, P

def test_family_recursion_preconditions():
    path = FamilyPair(family(2, [(1, 2), (2, 3), (3, 4)]), family(1, []))
    with pytest.raises(PreconditionError):
        family_pair_recursion_check(path)
    outside = FamilyPair(family(2, [(1, 2)]), family(1, [(3,)]))
    with pytest.raises(PreconditionError):
        family_pair_recursion_check(outside)

def test_grone_merris_path():
    P = FamilyPair(family(2, [(1, 2), (2, 3), (3, 4)]), family(1, []))
    report = grone_merris_scan(P)
    assert report.status == HOLDS
    assert report.render() == "HOLDS"
    assert report.dT == Partition((4, 2))

def test_grone_merris_campaign():
    summary = gm_campaign(exhaustive_vertices=4, random_pairs=40, seed=1)
    assert summary.clean
    assert summary.counts[HOLDS] == sum(summary.counts.values())
    assert summary.render().startswith("pairs=")

def test_fast_spectrum_matches_direct():
    for n in range(1, 5):
        for delta in enumerate_shifted(n):
            void = SimplicialComplex.void(delta.ambient)
            assert shifted_pair_spectrum(delta, void) == \
                    spectrum_poly(as_pair(delta))

def test_fast_spectrum_of_pairs():
    complexes = list(enumerate_shifted(3))
    for delta in complexes:
        for sub in complexes:
            if sub.faces <= delta.faces:
                direct = spectrum_poly(RelativeFaceSet(delta.ambient,
                    delta.faces - sub.faces))
                assert shifted_pair_spectrum(delta, sub) == direct

def test_fast_spectrum_preconditions():
    path = SimplicialComplex.from_facets(GROUND, [(1, 2), (2, 3), (3, 4)])
    with pytest.raises(PreconditionError):
        shifted_pair_spectrum(path, SimplicialComplex.void(GROUND))
    star = SimplicialComplex.from_facets(GROUND, [(1, 2), (1, 3), (1, 4)])
    whole = SimplicialComplex.from_facets(GROUND, [(1, 2, 3)])
    with pytest.raises(PreconditionError):
        shifted_pair_spectrum(star, whole)

def test_shifted_by_first_vertex():
    for n in range(1, 5):
        for X in enumerate_complexes(range(1, n + 1)):
            inductive = is_near_cone(X, apex=1) and \
                    is_shifted(X.delete(1)) and is_shifted(X.contract(1))
            assert is_shifted(X) == inductive, X

def test_pure_shifted_is_skeleton_of_cone():
    count = 0
    for n in range(1, 6):
        for d in range(0, n):
            for X in enumerate_shifted(n, pure_dim=d):
                assert cone(1, X.delete(1)).skeleton(d) == X
                count += 1
    assert count > 20

def test_degrees_follow_vertex_order():
    for P in shifted_pairs(5, 4):
        assert degree_sequence(P).is_vertex_ordered(), P
