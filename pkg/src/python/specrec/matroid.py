"""Matroids given by explicit basis lists.

Subsets of the ground set are bitmasks in ground order, as faces are in
specrec.complex; the public methods take and return collections of element
names.  Ranks of all subsets and the flats are tabulated when a matroid is
built; circuits and the flat lattice with its Moebius function are
tabulated on first use.

The spectrum polynomial of a matroid is the spectrum polynomial of its
independence complex.  Besides the direct Laplacian route it is computed
here from the KRS decomposition of independent sets and from the
deletion/contraction/circuit recursion.
"""

import functools
import itertools

import networkx
from sympy import Poly, ZZ

from specrec.complex import SimplicialComplex, face_indices, popcount, squeeze, \
        submasks
from specrec.error import InputError, PreconditionError
from specrec.laplacian import Q, T, X, SpectrumPolynomial
from specrec.util import get_logger

log = get_logger("specrec.matroid")

class KrsDecomposition(object):
    """B = B1 + B2 with B1 internally passive in cl(B1)."""

    def __init__(self, matroid, B1, B2, trace):
        self.matroid = matroid
        self.B1_mask = B1
        self.B2_mask = B2
        self.trace_indices = trace

    @property
    def B1(self):
        return self.matroid.names(self.B1_mask)

    @property
    def B2(self):
        return self.matroid.names(self.B2_mask)

    def ordered(self, mask):
        return [self.matroid.ground[j] for j in face_indices(mask)]

    @property
    def removal_trace(self):
        return tuple(self.matroid.ground[j] for j in self.trace_indices)

    def render(self):
        return "B1={%s} B2={%s} removed=[%s]" % (
                ",".join(str(v) for v in self.ordered(self.B1_mask)),
                ",".join(str(v) for v in self.ordered(self.B2_mask)),
                ",".join(str(v) for v in self.removal_trace))

class FlatLattice(object):
    def __init__(self, matroid):
        self.matroid = matroid
        self.flats = sorted(matroid._flats, key=lambda m: (popcount(m), m))
        self._flat_set = frozenset(self.flats)
        self._mobius = {}

    def __len__(self):
        return len(self.flats)

    def __contains__(self, mask):
        return mask in self._flat_set

    def mobius(self, W, V):
        W = self.matroid._mask(W)
        V = self.matroid._mask(V)
        if W not in self._flat_set or V not in self._flat_set:
            raise PreconditionError("mobius arguments must be flats")
        return self._mu(W, V)

    def _mu(self, W, V):
        if W & ~V:
            return 0
        if W == V:
            return 1
        key = (W, V)
        if key not in self._mobius:
            total = 0
            for U in self.flats:
                if U != V and not W & ~U and not U & ~V:
                    total += self._mu(W, U)
            self._mobius[key] = -total
        return self._mobius[key]

class Matroid(object):
    def __init__(self, ground, bases, check=True):
        self.ground = tuple(ground)
        self._index = {}
        for (j, v) in enumerate(self.ground):
            if v in self._index:
                raise InputError("duplicate ground element: %s" % (v,))
            self._index[v] = j
        self.n = len(self.ground)
        self.bases = frozenset(bases)
        if not self.bases:
            raise InputError("a matroid needs at least one base")
        sizes = set(popcount(B) for B in self.bases)
        if len(sizes) != 1:
            raise InputError("bases have different sizes: %s" % sorted(sizes))
        full = (1 << self.n) - 1
        if any(B & ~full for B in self.bases):
            raise InputError("base outside the ground set")
        self.rank_ = sizes.pop()
        if check:
            self._check_exchange()

        self._independent = set()
        for B in self.bases:
            if B not in self._independent:
                self._independent.update(submasks(B))
        self._independent = frozenset(self._independent)

        self._rank = [0] * (1 << self.n)
        for A in range(1 << self.n):
            if A in self._independent:
                self._rank[A] = popcount(A)
            else:
                self._rank[A] = max(self._rank[A & ~(1 << j)]
                        for j in face_indices(A))

        self._flats = [A for A in range(1 << self.n) if self._cl(A) == A]
        self._circuits = None
        self._lattice = None

    def _check_exchange(self):
        for B1 in self.bases:
            for B2 in self.bases:
                for x in face_indices(B1 & ~B2):
                    without = B1 & ~(1 << x)
                    if not any(without | (1 << y) in self.bases
                            for y in face_indices(B2 & ~B1)):
                        raise InputError("basis exchange fails for %s, %s" %
                                (self.names(B1), self.names(B2)))

    @classmethod
    def from_bases(cls, ground, bases):
        ground = tuple(ground)
        index = dict((v, j) for (j, v) in enumerate(ground))
        masks = []
        for B in bases:
            m = 0
            for v in B:
                if v not in index:
                    raise InputError("base %s contains unknown element %s" %
                            (list(B), v))
                m |= 1 << index[v]
            masks.append(m)
        return cls(ground, masks)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.ground, self.bases) == (other.ground, other.bases)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.ground, self.bases))

    def __repr__(self):
        return "<Matroid rank %d on %s: %d bases>" % (self.rank_,
                ",".join(str(v) for v in self.ground), len(self.bases))

    def canonical_key(self):
        """Ground relabelled 0..n-1 in order, bases sorted."""
        return (self.n, tuple(sorted(self.bases)))

    def index(self, e):
        try:
            return self._index[e]
        except KeyError:
            raise InputError("unknown ground element: %s" % (e,))

    def _mask(self, A):
        if isinstance(A, int):
            return A
        m = 0
        for v in A:
            m |= 1 << self.index(v)
        return m

    def names(self, mask):
        return frozenset(self.ground[j] for j in face_indices(mask))

    def _cl(self, A):
        r = self._rank[A]
        out = A
        for j in range(self.n):
            b = 1 << j
            if not A & b and self._rank[A | b] == r:
                out |= b
        return out

    def rank(self, A=None):
        if A is None:
            return self.rank_
        return self._rank[self._mask(A)]

    def closure(self, A):
        return self.names(self._cl(self._mask(A)))

    def is_independent(self, A):
        return self._mask(A) in self._independent

    def independent_sets(self):
        return sorted(self._independent, key=lambda m: (popcount(m), m))

    def is_loop(self, e):
        b = 1 << self.index(e)
        return not any(B & b for B in self.bases)

    def is_isthmus(self, e):
        b = 1 << self.index(e)
        return all(B & b for B in self.bases)

    def _circuit_masks(self):
        if self._circuits is None:
            self._circuits = sorted((A for A in range(1 << self.n)
                    if A not in self._independent and
                    all(A & ~(1 << j) in self._independent
                        for j in face_indices(A))),
                    key=lambda m: (popcount(m), m))
        return self._circuits

    def circuits(self):
        return [self.names(C) for C in self._circuit_masks()]

    def circuits_through(self, e):
        b = 1 << self.index(e)
        return [C for C in self._circuit_masks() if C & b]

    def _check_independent(self, I):
        if I not in self._independent:
            raise PreconditionError("%s is not independent" %
                    sorted(str(v) for v in self.names(I)))

    def _ci(self, p, I):
        self._check_independent(I)
        b = 1 << p
        if I & b or not self._cl(I) & b:
            raise PreconditionError("%s is not in cl(I) - I" % (self.ground[p],))
        C = b
        for j in face_indices(I):
            if (I | b) & ~(1 << j) in self._independent:
                C |= 1 << j
        return C

    def fundamental_circuit(self, p, I):
        """The unique circuit inside I + p, for p in cl(I) - I."""
        return self.names(self._ci(self.index(p), self._mask(I)))

    def _bo(self, b, I):
        bit = 1 << b
        if not I & bit:
            raise PreconditionError("%s is not in I" % (self.ground[b],))
        V = self._cl(I)
        rest = I & ~bit
        bond = bit
        for p in face_indices(V & ~I):
            if rest | (1 << p) in self._independent:
                bond |= 1 << p
        return bond

    def fundamental_bond(self, b, I):
        """The unique bond of the flat cl(I) inside (cl(I) - I) + b."""
        I = self._mask(I)
        self._check_independent(I)
        return self.names(self._bo(self.index(b), I))

    def _internally_active(self, B, b):
        bond = self._bo(b, B)
        return bond & -bond == 1 << b

    def internal_active(self, B, b):
        """b is the smallest element of its fundamental bond in cl(B)."""
        B = self._mask(B)
        self._check_independent(B)
        return self._internally_active(B, self.index(b))

    def _krs(self, B):
        B1 = B
        B2 = 0
        trace = []
        while True:
            active = [j for j in face_indices(B1)
                    if self._internally_active(B1, j)]
            if not active:
                break
            j = active[0]
            B1 &= ~(1 << j)
            B2 |= 1 << j
            trace.append(j)
        return KrsDecomposition(self, B1, B2, trace)

    def krs_decompose(self, B):
        B = self._mask(B)
        self._check_independent(B)
        decomp = self._krs(B)
        log.debug("krs %s: %s" % (sorted(str(v) for v in self.names(B)),
            decomp.render()))
        return decomp

    def _pi_bar(self, I):
        return self._cl(self._krs(I).B1_mask)

    def pi_bar(self, I):
        I = self._mask(I)
        self._check_independent(I)
        return self.names(self._pi_bar(I))

    def flats(self):
        if self._lattice is None:
            self._lattice = FlatLattice(self)
        return self._lattice

    def mobius(self, W, V):
        return self.flats().mobius(W, V)

    def reduced_euler_char(self):
        return sum(1 if popcount(I) % 2 else -1 for I in self._independent)

    def _minor(self, j, bases):
        ground = self.ground[:j] + self.ground[j + 1:]
        return Matroid(ground, [squeeze(B, j) for B in bases], check=False)

    def delete(self, e):
        """M - e; deleting an isthmus contracts it."""
        j = self.index(e)
        b = 1 << j
        if self.is_isthmus(e):
            return self.contract(e)
        return self._minor(j, [B for B in self.bases if not B & b])

    def contract(self, e):
        """M / e; contracting a loop deletes it."""
        j = self.index(e)
        b = 1 << j
        if self.is_loop(e):
            return self._minor(j, self.bases)
        return self._minor(j, [B & ~b for B in self.bases if B & b])

    def contract_set(self, A):
        M = self
        for e in sorted(A, key=self.index):
            M = M.contract(e)
        return M

    def restrict(self, A):
        A = self._mask(A)
        r = self._rank[A]
        keep = face_indices(A)
        bases = []
        for I in self._independent:
            if not I & ~A and popcount(I) == r:
                m = 0
                for (k, j) in enumerate(keep):
                    if I & (1 << j):
                        m |= 1 << k
                bases.append(m)
        return Matroid([self.ground[j] for j in keep], bases, check=False)

    def reorder(self, order):
        order = tuple(order)
        if sorted(map(self.index, order)) != list(range(self.n)):
            raise InputError("order must be a permutation of the ground set")
        pos = [self.index(v) for v in order]
        bases = []
        for B in self.bases:
            m = 0
            for (k, j) in enumerate(pos):
                if B & (1 << j):
                    m |= 1 << k
            bases.append(m)
        return Matroid(order, bases, check=False)

    def independence_complex(self):
        return SimplicialComplex(self.ground, self._independent, check=False)

def from_bases(ground, bases):
    return Matroid.from_bases(ground, bases)

def uniform(r, n):
    if not 0 <= r <= n:
        raise InputError("uniform matroid needs 0 <= r <= n, got r=%d n=%d" %
                (r, n))
    ground = tuple(range(1, n + 1))
    bases = [sum(1 << j for j in combo)
            for combo in itertools.combinations(range(n), r)]
    return Matroid(ground, bases, check=False)

def _edge_names(edges):
    """uv when those are all distinct, else e0, e1, ... by position."""
    names = ["%s%s" % edge for edge in edges]
    if len(set(names)) == len(names):
        return names
    return ["e%d" % j for j in range(len(edges))]

def graphic(edges, names=None):
    """Cycle matroid of a multigraph; bases are the spanning forests."""
    edges = [tuple(edge) for edge in edges]
    for edge in edges:
        if len(edge) != 2:
            raise InputError("an edge needs two endpoints: %s" % (list(edge),))
    if names is None:
        names = _edge_names(edges)
    names = tuple(names)
    if len(names) != len(edges):
        raise InputError("need one name per edge")

    nodes = set()
    for (u, v) in edges:
        nodes.update((u, v))
    G = networkx.MultiGraph()
    G.add_nodes_from(nodes)
    G.add_edges_from(edges)
    r = len(nodes) - networkx.number_connected_components(G) if nodes else 0

    bases = []
    for combo in itertools.combinations(range(len(edges)), r):
        F = networkx.MultiGraph()
        F.add_nodes_from(nodes)
        F.add_edges_from(edges[j] for j in combo)
        if not nodes or networkx.is_forest(F):
            bases.append(sum(1 << j for j in combo))
    return Matroid(names, bases, check=False)

def direct_sum(M, N):
    common = set(M.ground) & set(N.ground)
    if common:
        raise InputError("ground sets overlap in %s" %
                ",".join(sorted(str(v) for v in common)))
    bases = [B | (C << M.n) for B in M.bases for C in N.bases]
    return Matroid(M.ground + N.ground, bases, check=False)

def independence_complex(M):
    return M.independence_complex()

def spectrum_poly_krs(M):
    """q^|E| * sum over independent I of t^|I| q^-|pibar(I)|."""
    terms = {}
    for I in M._independent:
        key = (popcount(I), M.n - popcount(M._pi_bar(I)))
        terms[key] = terms.get(key, 0) + 1
    return SpectrumPolynomial(terms)

def _matroid_from_key(key):
    (n, bases) = key
    return Matroid(range(n), bases, check=False)

@functools.lru_cache(maxsize=None)
def _recursive_poly(key):
    M = _matroid_from_key(key)
    non_loops = [e for e in M.ground if not M.is_loop(e)]
    if not non_loops:
        return Poly(1, T, Q, domain=ZZ)
    e = non_loops[0]
    q = Poly(Q, T, Q, domain=ZZ)
    t = Poly(T, T, Q, domain=ZZ)
    if M.is_isthmus(e):
        return q * (1 + t) * _recursive_poly(M.contract(e).canonical_key())

    result = q * _recursive_poly(M.delete(e).canonical_key()) + \
            q * t * _recursive_poly(M.contract(e).canonical_key())
    for C in M.circuits_through(e):
        minor = M.contract_set(M.names(C))
        result += (1 - q) * t ** (popcount(C) - 1) * \
                _recursive_poly(minor.canonical_key())
    return result

def spectrum_poly_recursive(M):
    """S_M = qS_{M-e} + qtS_{M/e} + (1-q) sum_{C ∋ e} t^{rk C} S_{M/C}."""
    return SpectrumPolynomial.from_poly(_recursive_poly(M.canonical_key()))

def pair_spectrum_poly(M, e):
    """Spectrum polynomial of (IN(M)-e, IN(M)/e) as a circuit sum."""
    if M.is_loop(e):
        raise PreconditionError("%s is a loop; the pair is (IN(M)-e, VOID)" %
                (e,))
    result = Poly(0, T, Q, domain=ZZ)
    t = Poly(T, T, Q, domain=ZZ)
    for C in M.circuits_through(e):
        minor = M.contract_set(M.names(C))
        result += t ** (popcount(C) - 1) * \
                _recursive_poly(minor.canonical_key())
    return SpectrumPolynomial.from_poly(result)

def reduced_euler_char(M):
    return M.reduced_euler_char()

def basis_activity_poly(M, e=None):
    """sum over bases B (with e in pibar(B)) of x^|pibar(B)|."""
    b = 0 if e is None else 1 << M.index(e)
    coeffs = {}
    for B in M.bases:
        V = M._pi_bar(B)
        if V & b == b:
            k = popcount(V)
            coeffs[k] = coeffs.get(k, 0) + 1
    return _x_poly(coeffs)

def flat_activity_poly(M, e=None):
    """sum over flats V (containing e) of |chi(V)| |mu(V, E)| x^|V|."""
    b = 0 if e is None else 1 << M.index(e)
    lattice = M.flats()
    top = M._cl((1 << M.n) - 1)
    coeffs = {}
    for V in lattice.flats:
        if V & b != b:
            continue
        weight = abs(M.restrict(V).reduced_euler_char()) * \
                abs(lattice._mu(V, top))
        if weight:
            k = popcount(V)
            coeffs[k] = coeffs.get(k, 0) + weight
    return _x_poly(coeffs)

def _x_poly(coeffs):
    expr = 0
    for (k, c) in coeffs.items():
        expr += c * X ** k
    return Poly(expr, X, domain=ZZ)
