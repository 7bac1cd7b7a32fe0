import numpy
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, Poly, ZZ

from specrec.complex import Family, RelativeFaceSet, SimplicialComplex, \
        as_pair, dual, pair
from specrec.error import PreconditionError
from specrec.laplacian import X, betti_poly, betti_rank_oracle, boundary, \
        char_poly, check_hodge_pairing, exact_rank, f_poly, family_laplacian, \
        family_spectrum, integer_roots, laplacian, laplacian_up, s_dd_poly, \
        spectrum, spectrum_poly

def cx(vertices, facets):
    return SimplicialComplex.from_facets(vertices, facets)

def xpoly(expr):
    return Poly(expr, X, domain=ZZ)

PATH3 = cx('abcd', ['ab', 'bc', 'cd'])
SINGLE = cx('a', ['a'])
TWO = cx('ab', ['a', 'b'])
CIRCLE = cx('abc', ['ab', 'bc', 'ac'])

def test_boundary_signs():
    d = boundary(as_pair(SINGLE), 0)
    assert d.matrix.tolist() == [[1]]
    d = boundary(as_pair(PATH3), 1)
    assert d.shape == (4, 3)
    assert d.matrix[:, 0].tolist() == [-1, 1, 0, 0]
    assert all(sorted(col) == [-1, 0, 0, 1] for col in d.matrix.T.tolist())

def test_relative_boundary_drops_absent_faces():
    P = RelativeFaceSet('x', [0b1])
    assert boundary(P, 0).shape == (0, 1)

def test_small_laplacians():
    P = as_pair(SINGLE)
    assert laplacian(P, -1).tolist() == [[1]]
    assert laplacian(P, 0).tolist() == [[1]]
    assert laplacian(as_pair(TWO), 0).tolist() == [[1, 1], [1, 1]]
    assert laplacian(as_pair(SimplicialComplex.void('ab')), 0).shape == (0, 0)

def test_char_poly_small():
    assert char_poly([[2, -1], [-1, 2]]) == xpoly(X**2 - 4*X + 3)
    assert char_poly(numpy.zeros((3, 3), dtype=int)) == xpoly(X**3)
    assert char_poly(numpy.zeros((0, 0), dtype=int)) == xpoly(1)

def test_path3_char_polys():
    P = as_pair(PATH3)
    assert char_poly(laplacian_up(P, 0)) == \
            xpoly(X * (X - 2) * (X**2 - 4*X + 2))
    assert char_poly(laplacian(P, 0)) == \
            xpoly((X - 4) * (X - 2) * (X**2 - 4*X + 2))

symmetric = st.integers(min_value=1, max_value=5).flatmap(
        lambda n: st.lists(st.integers(min_value=-4, max_value=4),
            min_size=n * n, max_size=n * n).map(
                lambda v: [[v[i * n + j] + v[j * n + i] for j in range(n)]
                    for i in range(n)]))

@settings(max_examples=80, deadline=None)
@given(symmetric)
def test_char_poly_matches_sympy(rows):
    expected = Matrix(rows).charpoly(X).all_coeffs()
    assert [int(c) for c in char_poly(rows).all_coeffs()] == \
            [int(c) for c in expected]

def test_integer_roots():
    (roots, residual) = integer_roots(xpoly(X**3 - X))
    assert roots == {0: 1, 1: 1, -1: 1}
    assert residual.degree() == 0
    (roots, residual) = integer_roots(xpoly((X - 3)**2 * (X**2 - 2)), bound=4)
    assert roots == {3: 2}
    assert residual == xpoly(X**2 - 2)

def test_spectra():
    assert spectrum(as_pair(SINGLE), 0).roots == {1: 1}
    assert spectrum(as_pair(TWO), -1).roots == {2: 1}
    path = spectrum(as_pair(PATH3), 0)
    assert not path.is_integral
    assert path.render() == "2^1 4^1 residual [2,-4,1]"
    assert path.size == 4

def test_spectrum_polys():
    assert spectrum_poly(as_pair(SINGLE)).render() == "q + q*t"
    assert spectrum_poly(as_pair(cx('a', [[]]))).render() == "1"
    assert spectrum_poly(as_pair(cx('', [[]]))).render() == "1"
    assert spectrum_poly(as_pair(TWO)).render() == "q^2 + q^2*t + t"
    assert spectrum_poly(as_pair(SimplicialComplex.void('a'))).render() == "0"

def test_nonintegral_spectrum_poly():
    S = spectrum_poly(as_pair(PATH3))
    assert not S.integral
    assert sorted(S.residuals) == [1, 2]
    with pytest.raises(PreconditionError):
        S.to_poly()

def test_dual_reverses_spectrum_poly():
    for K in (PATH3, CIRCLE, TWO):
        n = len(K.ambient)
        assert spectrum_poly(dual(as_pair(K))) == \
                spectrum_poly(as_pair(K)).reversed(n)

def test_betti():
    assert betti_rank_oracle(as_pair(CIRCLE), 1) == 1
    assert betti_rank_oracle(as_pair(PATH3), 0) == 0
    assert betti_poly(as_pair(TWO)) == [0, 1]
    assert betti_poly(as_pair(PATH3)) == [0, 0, 0]
    assert f_poly(PATH3) == [1, 4, 3]

def test_betti_of_star_pair():
    star_pair = pair(CIRCLE, CIRCLE.star('a'))
    for i in range(-1, 2):
        assert betti_rank_oracle(star_pair, i) == \
                betti_rank_oracle(as_pair(CIRCLE), i)

def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank(numpy.zeros((0, 3), dtype=int)) == 0

def test_hodge_pairing():
    for K in (PATH3, CIRCLE, TWO, SINGLE):
        assert all(check_hodge_pairing(as_pair(K)).values())

def test_s_dd_of_single_vertex():
    assert s_dd_poly(as_pair(SINGLE)).render() == "q*t"

def test_family_laplacian():
    ground = (1, 2, 3, 4)
    K = Family.from_names(ground, 2, [(1, 2), (1, 3)])
    Kp = Family.from_names(ground, 1, [(1,)])
    assert family_laplacian(K, Kp).tolist() == [[1, 0], [0, 1]]

    star = Family.from_names(ground, 2, [(1, 2), (1, 3), (1, 4)])
    spec = family_spectrum(star, Family(ground, 1, ()))
    assert spec.nonzero() == {4: 1, 1: 2}

    empty = Family(ground, 2, ())
    assert family_laplacian(empty, Family(ground, 1, ())).shape == (0, 0)
