"""Boundary matrices, combinatorial Laplacians and their exact spectra.

Everything here works on a RelativeFaceSet (or anything shaped like one: a
complex or filter is its own face difference).  L_i acts on the i-faces of
the difference; L_i = L'_i + L''_i where L'_i = d_{i+1} d*_{i+1} is the up
part and L''_i = d*_i d_i the down part.

Spectra are exact: characteristic polynomials come from the
Faddeev-LeVerrier trace recurrence over Python integers, integer
eigenvalues are split off by exact division, and whatever cannot be split
stays behind as an integer residual factor.
"""

import functools

import numpy
from sympy import Poly, Symbol, ZZ, divisors
from sympy.polys.matrices import DomainMatrix

from specrec.complex import RelativeFaceSet, face_indices
from specrec.error import InputError, PreconditionError
from specrec.util import get_logger

X = Symbol('x')
T = Symbol('t')
Q = Symbol('q')

ONE = Poly(1, X, domain=ZZ)

log = get_logger("specrec.laplacian")

class BoundaryMatrix(object):
    """Signed relative boundary d_i from i-faces (cols) to (i-1)-faces (rows)."""

    def __init__(self, rows, cols, matrix):
        self.rows = rows
        self.cols = cols
        self.matrix = matrix

    @property
    def shape(self):
        return self.matrix.shape

    def __repr__(self):
        return "<BoundaryMatrix %dx%d>" % self.shape

def boundary(P, i):
    cols = P.faces_of_dim(i)
    rows = P.faces_of_dim(i - 1)
    rindex = dict((G, r) for (r, G) in enumerate(rows))
    m = numpy.zeros((len(rows), len(cols)), dtype=numpy.int64)
    for (c, F) in enumerate(cols):
        for (j, v) in enumerate(face_indices(F)):
            r = rindex.get(F & ~(1 << v))
            if r is not None:
                m[r, c] = -1 if j % 2 else 1
    return BoundaryMatrix(rows, cols, m)

def laplacian_up(P, i):
    d = boundary(P, i + 1).matrix
    return d.dot(d.T)

def laplacian_down(P, i):
    d = boundary(P, i).matrix
    return d.T.dot(d)

def laplacian(P, i):
    return laplacian_up(P, i) + laplacian_down(P, i)

def char_poly(matrix):
    """det(xI - M) for a square integer matrix, as a Poly over ZZ.

    Faddeev-LeVerrier: M_0 = 0, c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I and
    c_{n-k} = -tr(A M_k) / k, every division exact."""
    a = numpy.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError("char_poly needs a square matrix, got shape %s" %
                (a.shape,))
    n = a.shape[0]
    if n == 0:
        return ONE
    log.debug("char poly of a %dx%d matrix" % (n, n))

    a = a.astype(object)
    ident = numpy.identity(n, dtype=numpy.int64).astype(object)
    am = numpy.zeros((n, n), dtype=numpy.int64).astype(object)
    coeffs = [1]
    c = 1
    for k in range(1, n + 1):
        m = am + c * ident
        am = a.dot(m)
        trace = sum(am[j, j] for j in range(n))
        (c, rem) = divmod(-int(trace), k)
        assert rem == 0, "inexact division in char poly recurrence at step %d" % k
        coeffs.append(c)
    return Poly(coeffs, X, domain=ZZ)

def gershgorin_bound(matrix):
    """Largest absolute row sum; bounds every real eigenvalue."""
    a = numpy.asarray(matrix)
    if a.size == 0:
        return 0
    return int(numpy.abs(a).sum(axis=1).max())

def strip_zero_roots(poly):
    """(k, p) with poly = x^k p and p(0) != 0."""
    coeffs = poly.all_coeffs()
    k = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        k += 1
    return (k, Poly(coeffs, X, domain=ZZ))

def strip_root(poly, lam):
    """Divide out every factor (x - lam)."""
    lin = Poly(X - lam, X, domain=ZZ)
    while poly.degree() > 0 and poly.eval(lam) == 0:
        poly = poly.exquo(lin)
    return poly

def integer_roots(poly, bound=None):
    """Split a monic integer polynomial into integer roots and a residual.

    Candidates are the divisors of the constant term (rational root test);
    with a bound only |lam| <= bound is tried, otherwise every divisor is.
    Returns ({lam: multiplicity}, residual)."""
    (k, residual) = strip_zero_roots(poly)
    roots = {}
    if k:
        roots[0] = k
    if residual.degree() <= 0:
        return (roots, residual)

    const = abs(int(residual.eval(0)))
    if bound is None:
        candidates = divisors(const)
    else:
        candidates = [d for d in range(1, bound + 1) if const % d == 0]

    lin_cache = {}
    for d in candidates:
        for lam in (d, -d):
            if residual.degree() <= 0:
                break
            mult = 0
            while residual.degree() > 0 and residual.eval(lam) == 0:
                if lam not in lin_cache:
                    lin_cache[lam] = Poly(X - lam, X, domain=ZZ)
                residual = residual.exquo(lin_cache[lam])
                mult += 1
            if mult:
                roots[lam] = mult
    return (roots, residual)

class SpectrumMultiset(object):
    """Eigenvalue multiset: integer roots plus a residual integer factor."""

    def __init__(self, roots, residual=ONE):
        self.roots = dict((lam, m) for (lam, m) in roots.items() if m)
        self.residual = residual

    @classmethod
    def from_char_poly(cls, poly, bound=None):
        (roots, residual) = integer_roots(poly, bound)
        return cls(roots, residual)

    @property
    def size(self):
        return sum(self.roots.values()) + self.residual.degree()

    @property
    def is_integral(self):
        return self.residual.degree() <= 0

    def multiplicity(self, lam):
        return self.roots.get(lam, 0)

    def values(self):
        """Integer eigenvalues with repetition, decreasing."""
        out = []
        for lam in sorted(self.roots, reverse=True):
            out.extend([lam] * self.roots[lam])
        return out

    def nonzero(self):
        return dict((lam, m) for (lam, m) in self.roots.items() if lam != 0)

    def char_poly(self):
        p = self.residual
        for (lam, m) in self.roots.items():
            p = p * Poly(X - lam, X, domain=ZZ) ** m
        return p

    def nonzero_poly(self):
        return strip_zero_roots(self.char_poly())[1]

    def residual_coeffs(self):
        return [int(c) for c in reversed(self.residual.all_coeffs())]

    def render(self):
        parts = ["%d^%d" % (lam, self.roots[lam]) for lam in sorted(self.roots)]
        if not self.is_integral:
            parts.append("residual [%s]" %
                    ",".join(str(c) for c in self.residual_coeffs()))
        return " ".join(parts)

    def to_dict(self):
        d = {'roots': [[lam, self.roots[lam]] for lam in sorted(self.roots)]}
        if not self.is_integral:
            d['residual'] = self.residual_coeffs()
        return d

    def __eq__(self, other):
        if not isinstance(other, SpectrumMultiset):
            return NotImplemented
        return self.roots == other.roots and \
                self.residual.all_coeffs() == other.residual.all_coeffs()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "<SpectrumMultiset %s>" % (self.render() or "empty")

def _term_text(i, lam, m):
    factors = []
    if lam:
        factors.append("q" if lam == 1 else "q^%d" % lam)
    if i:
        factors.append("t" if i == 1 else "t^%d" % i)
    if not factors:
        return str(m)
    if m == 1:
        return "*".join(factors)
    return "%d*%s" % (m, "*".join(factors))

class SpectrumPolynomial(object):
    """Sum of m * t^i * q^lam, plus per-t-degree residual factors.

    A term (i, lam) -> m records that lam is an eigenvalue of L_{i-1} with
    multiplicity m.  residuals[i] is the part of the characteristic
    polynomial of L_{i-1} with no integer roots."""

    def __init__(self, terms=None, residuals=None):
        self.terms = {}
        for ((i, lam), m) in (terms or {}).items():
            if m:
                self.terms[(i, lam)] = m
        self.residuals = {}
        for (i, poly) in (residuals or {}).items():
            if poly.degree() > 0:
                self.residuals[i] = poly

    @property
    def integral(self):
        return not self.residuals

    @classmethod
    def from_poly(cls, poly):
        if not isinstance(poly, Poly):
            poly = Poly(poly, T, Q, domain=ZZ)
        terms = {}
        for ((i, lam), m) in poly.terms():
            terms[(int(i), int(lam))] = int(m)
        return cls(terms)

    def to_poly(self):
        if not self.integral:
            raise PreconditionError("spectrum polynomial has non-integral "
                    "spectra in t-degrees %s" % sorted(self.residuals))
        expr = 0
        for ((i, lam), m) in self.terms.items():
            expr += m * T ** i * Q ** lam
        return Poly(expr, T, Q, domain=ZZ)

    def coefficient(self, i, lam):
        return self.terms.get((i, lam), 0)

    def t_degrees(self):
        return sorted(set(i for (i, lam) in self.terms) | set(self.residuals))

    def reversed(self, n):
        """t^n S(1/t, q)."""
        return SpectrumPolynomial(
                dict(((n - i, lam), m) for ((i, lam), m) in self.terms.items()),
                dict((n - i, p) for (i, p) in self.residuals.items()))

    def shifted(self, k):
        """t^k S."""
        return SpectrumPolynomial(
                dict(((i + k, lam), m) for ((i, lam), m) in self.terms.items()),
                dict((i + k, p) for (i, p) in self.residuals.items()))

    def render(self):
        if not self.terms:
            return "0"
        text = ""
        for (i, lam) in sorted(self.terms, key=lambda x: (x[0], -x[1])):
            m = self.terms[(i, lam)]
            if not text:
                text = ("-" if m < 0 else "") + _term_text(i, lam, abs(m))
            else:
                text += (" - " if m < 0 else " + ") + _term_text(i, lam, abs(m))
        return text

    def residual_lines(self):
        return ["residual t^%d: [%s]" % (i, ",".join(str(int(c))
                    for c in reversed(self.residuals[i].all_coeffs())))
                for i in sorted(self.residuals)]

    def to_dict(self):
        return {
            'text': self.render(),
            'integral': self.integral,
            'terms': [[i, lam, self.terms[(i, lam)]]
                for (i, lam) in sorted(self.terms, key=lambda x: (x[0], -x[1]))],
            'residuals': dict((str(i), [int(c) for c in
                reversed(self.residuals[i].all_coeffs())])
                for i in sorted(self.residuals)),
        }

    def __eq__(self, other):
        if not isinstance(other, SpectrumPolynomial):
            return NotImplemented
        if self.terms != other.terms:
            return False
        if sorted(self.residuals) != sorted(other.residuals):
            return False
        return all(self.residuals[i].all_coeffs() ==
                other.residuals[i].all_coeffs() for i in self.residuals)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "<SpectrumPolynomial %s>" % self.render()

@functools.lru_cache(maxsize=8192)
def laplacian_char_poly(P, i):
    """Characteristic polynomial of L_i(P), cached per (face set, i)."""
    return char_poly(laplacian(P, i))

@functools.lru_cache(maxsize=8192)
def spectrum(P, i):
    L = laplacian(P, i)
    return SpectrumMultiset.from_char_poly(laplacian_char_poly(P, i),
            gershgorin_bound(L))

@functools.lru_cache(maxsize=8192)
def down_spectrum(P, i):
    L = laplacian_down(P, i)
    return SpectrumMultiset.from_char_poly(char_poly(L), gershgorin_bound(L))

def _dims(P):
    d = P.dim()
    if d is None:
        return []
    return range(-1, d + 1)

def spectrum_poly(P):
    terms = {}
    residuals = {}
    for i in _dims(P):
        spec = spectrum(P, i)
        for (lam, m) in spec.roots.items():
            terms[(i + 1, lam)] = m
        if not spec.is_integral:
            residuals[i + 1] = spec.residual
    return SpectrumPolynomial(terms, residuals)

def s_dd_poly(P):
    """S'': spectra of the down Laplacians with zero eigenvalues omitted."""
    terms = {}
    residuals = {}
    for i in _dims(P):
        spec = down_spectrum(P, i)
        for (lam, m) in spec.nonzero().items():
            terms[(i + 1, lam)] = m
        if not spec.is_integral:
            residuals[i + 1] = spec.residual
    return SpectrumPolynomial(terms, residuals)

def betti_poly(P):
    """[B_0, B_1, ...] with B_i the multiplicity of 0 in L_{i-1}."""
    return [spectrum(P, i).multiplicity(0) for i in _dims(P)]

def f_poly(X):
    """[F_0, F_1, ...] with F_i = f_{i-1}."""
    return list(X.f_vector())

def exact_rank(matrix):
    a = numpy.asarray(matrix)
    if a.size == 0:
        return 0
    rows = [[ZZ(int(x)) for x in row] for row in a.tolist()]
    return DomainMatrix.from_list(rows, ZZ).to_field().rank()

def betti_rank_oracle(P, i):
    """Reduced Betti number of P in dimension i from boundary ranks."""
    return P.f(i) - exact_rank(boundary(P, i).matrix) - \
            exact_rank(boundary(P, i + 1).matrix)

def check_hodge_pairing(P):
    """{i: verdict} for nonzero(s_i) = nonzero(s''_i) + nonzero(s''_{i+1})."""
    verdicts = {}
    for i in _dims(P):
        lhs = strip_zero_roots(laplacian_char_poly(P, i))[1]
        down = strip_zero_roots(char_poly(laplacian_down(P, i)))[1]
        up_next = strip_zero_roots(char_poly(laplacian_down(P, i + 1)))[1]
        verdicts[i] = lhs == down * up_next
    return verdicts

def family_pair_faces(K, Kprime):
    """Face set whose L''_{k-1} is the family Laplacian L(K, K')."""
    if Kprime.k != K.k - 1:
        raise InputError("K' must be a %d-family, got a %d-family" %
                (K.k - 1, Kprime.k))
    if K.ambient != Kprime.ambient:
        raise InputError("K and K' must share one ambient")
    rows = set(F & ~(1 << j) for F in K.members for j in face_indices(F))
    return RelativeFaceSet(K.ambient, set(K.members) | (rows - Kprime.members))

def family_laplacian(K, Kprime):
    """L(K, K') = d* d with d restricted to the faces of dK outside K'."""
    return laplacian_down(family_pair_faces(K, Kprime), K.k - 1)

def family_spectrum(K, Kprime):
    return down_spectrum(family_pair_faces(K, Kprime), K.k - 1)
