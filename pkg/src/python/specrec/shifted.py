"""Shifted families and complexes, degree sequences and majorization.

A family or complex is shifted when it is closed under the componentwise
order on sorted vertex lists: replacing a member's vertex by an earlier,
unused vertex gives another member.  Shifted family pairs have spectra equal
to the conjugate of their degree sequence; for arbitrary family pairs the
majorization of the spectrum by that conjugate is only scanned for.
"""

import itertools
import random

from sympy import Poly, Rational, ZZ

from specrec.complex import Family, SimplicialComplex, face_indices, \
        order_ideals, popcount
from specrec.error import InputError, PreconditionError
from specrec.laplacian import SpectrumPolynomial, X, char_poly, \
        family_laplacian, family_spectrum, strip_zero_roots
from specrec.util import get_logger

HOLDS = 'HOLDS'
VIOLATED = 'VIOLATED'
UNDECIDED = 'UNDECIDED'

MAX_ENUMERATION_VERTICES = 7

log = get_logger("specrec.shifted")

class Partition(object):
    def __init__(self, parts=()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise InputError("partition parts must be non-negative: %s" % parts)
        self.parts = tuple(sorted((p for p in parts if p), reverse=True))

    def conjugate(self):
        if not self.parts:
            return Partition()
        return Partition(sum(1 for p in self.parts if p > j)
                for j in range(self.parts[0]))

    @property
    def size(self):
        return sum(self.parts)

    def prefix_sums(self, length):
        sums = []
        total = 0
        for j in range(length):
            if j < len(self.parts):
                total += self.parts[j]
            sums.append(total)
        return sums

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j):
        return self.parts[j]

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.parts)

    def render(self):
        return "(%s)" % ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return "<Partition %s>" % self.render()

def conjugate(p):
    return p.conjugate()

def is_majorized_by(a, b):
    """a ⊴ b: every prefix sum of a is at most the matching one of b.

    Totals need not agree; compare a.size and b.size for that."""
    length = max(len(a), len(b))
    return all(x <= y for (x, y) in
            zip(a.prefix_sums(length), b.prefix_sums(length)))

# a ⊴ b under its usual operation name
majorizes = is_majorized_by

def _order_positions(X, order):
    n = len(X.ambient)
    if order is None:
        return list(range(n))
    order = tuple(order)
    if len(order) != n or set(order) != set(X.ambient):
        raise InputError("order must be a permutation of the ambient")
    where = dict((v, p) for (p, v) in enumerate(order))
    return [where[v] for v in X.ambient]

def _members(X):
    if isinstance(X, Family):
        return X.members
    return X.faces

def _relabel(masks, positions):
    out = set()
    for F in masks:
        m = 0
        for j in face_indices(F):
            m |= 1 << positions[j]
        out.add(m)
    return out

def is_shifted(X, order=None):
    """Closed under componentwise predecessors in the given vertex order."""
    members = _relabel(_members(X), _order_positions(X, order))
    for F in members:
        for p in face_indices(F):
            if p and not F & (1 << (p - 1)):
                if (F & ~(1 << p)) | (1 << (p - 1)) not in members:
                    return False
    return True

def is_near_cone(X, apex=None):
    """d(X - apex) lies in X / apex; apex defaults to the first vertex."""
    if apex is None:
        if not X.ambient:
            return True
        apex = X.ambient[0]
    a = 1 << X.index(apex)
    members = _members(X)
    for F in members:
        if F & a:
            continue
        for j in face_indices(F):
            if (F & ~(1 << j)) | a not in members:
                return False
    return True

def _shifted_lower_covers(F, with_subsets):
    covers = []
    for p in face_indices(F):
        if with_subsets:
            covers.append(F & ~(1 << p))
        if p and not F & (1 << (p - 1)):
            covers.append((F & ~(1 << p)) | (1 << (p - 1)))
    return covers

def _shifted_key(F):
    return (popcount(F), sum(face_indices(F)), F)

def enumerate_shifted(n, max_dim=None, pure_dim=None):
    """Every non-void shifted complex on the vertices 1..n, once each."""
    if n > MAX_ENUMERATION_VERTICES:
        raise InputError("exhaustive enumeration is limited to %d vertices" %
                MAX_ENUMERATION_VERTICES)
    ambient = tuple(range(1, n + 1))
    limit = n if max_dim is None else max_dim + 1
    elements = sorted((F for F in range(1 << n) if popcount(F) <= limit),
            key=_shifted_key)
    for ideal in order_ideals(elements,
            lambda F: _shifted_lower_covers(F, True)):
        if not ideal:
            continue
        delta = SimplicialComplex(ambient, ideal, check=False)
        if pure_dim is not None:
            if any(popcount(F) != pure_dim + 1 for F in delta.facets()):
                continue
        yield delta

def enumerate_shifted_families(n, k):
    """Every shifted k-family on 1..n, the empty family included."""
    if n > MAX_ENUMERATION_VERTICES:
        raise InputError("exhaustive enumeration is limited to %d vertices" %
                MAX_ENUMERATION_VERTICES)
    ambient = tuple(range(1, n + 1))
    if k < 0 or k > n:
        yield Family(ambient, k, ())
        return
    elements = sorted((sum(1 << j for j in combo)
            for combo in itertools.combinations(range(n), k)),
            key=_shifted_key)
    for ideal in order_ideals(elements,
            lambda F: _shifted_lower_covers(F, False)):
        yield Family(ambient, k, ideal)

def shifted_closure(ambient, seeds):
    """Smallest shifted complex on ambient containing the seed faces."""
    ambient = tuple(ambient)
    if any(F >> len(ambient) for F in seeds):
        raise InputError("seed face outside the ambient")
    faces = set()
    stack = list(seeds)
    while stack:
        F = stack.pop()
        if F in faces:
            continue
        faces.add(F)
        stack.extend(_shifted_lower_covers(F, True))
    return SimplicialComplex(ambient, faces, check=False)

class FamilyPair(object):
    """(K, K') with K a k-family and K' a (k-1)-family on one ambient.

    Two pairs are equal when they share K and (dK) ∩ K'."""

    def __init__(self, K, Kprime):
        if Kprime.k != K.k - 1:
            raise InputError("K' must be a %d-family, got a %d-family" %
                    (K.k - 1, Kprime.k))
        if K.ambient != Kprime.ambient:
            raise InputError("K and K' must share one ambient")
        self.K = K
        self.Kprime = Kprime
        self.canonical = K.boundary().members & Kprime.members

    @property
    def ambient(self):
        return self.K.ambient

    @property
    def k(self):
        return self.K.k

    def __eq__(self, other):
        if not isinstance(other, FamilyPair):
            return NotImplemented
        return (self.K, self.canonical) == (other.K, other.canonical)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.K, self.canonical))

    def __repr__(self):
        return "<FamilyPair k=%d |K|=%d |K'|=%d>" % (self.k, len(self.K),
                len(self.Kprime))

    def is_shifted(self):
        return is_shifted(self.K) and \
                is_shifted(Family(self.ambient, self.k - 1, self.canonical))

    def laplacian(self):
        return family_laplacian(self.K, self.Kprime)

    def spectrum(self):
        return family_spectrum(self.K, self.Kprime)

class DegreeSequence(object):
    def __init__(self, ambient, degrees):
        self.ambient = tuple(ambient)
        self.values = tuple(degrees)
        self.partition = Partition(self.values)

    @property
    def degrees(self):
        return dict(zip(self.ambient, self.values))

    def is_vertex_ordered(self):
        return all(self.values[j] >= self.values[j + 1]
                for j in range(len(self.values) - 1))

    def render(self):
        return " ".join("d%s=%d" % (v, d)
                for (v, d) in zip(self.ambient, self.values))

def degree_sequence(P):
    K = P.K
    Kprime = P.Kprime.members
    degrees = []
    for j in range(len(P.ambient)):
        b = 1 << j
        degrees.append(sum(1 for F in K.members
            if F & b and F & ~b not in Kprime))
    return DegreeSequence(P.ambient, degrees)

class SdtReport(object):
    def __init__(self, s, dT, ok):
        self.s = s
        self.dT = dT
        self.ok = ok

    def render(self):
        return "s=%s dT=%s %s" % (self.s.render(), self.dT.render(),
                "OK" if self.ok else "MISMATCH")

    def to_dict(self):
        return {'s': list(self.s), 'dT': list(self.dT), 'ok': self.ok}

def check_sdT(P):
    """Compare s(K,K') with d(K,K')^T modulo zeros, for shifted pairs."""
    if not P.is_shifted():
        raise PreconditionError("family pair is not shifted; "
                "use grone_merris_scan instead")
    spec = P.spectrum()
    s = Partition(spec.values())
    dT = degree_sequence(P).partition.conjugate()
    return SdtReport(s, dT, spec.is_integral and s == dT)

class GmReport(object):
    def __init__(self, status, witness=None, note='', s=None, dT=None):
        self.status = status
        self.witness = witness
        self.note = note
        self.s = s
        self.dT = dT

    def render(self):
        text = self.status
        if self.witness is not None:
            text += " k=%d" % self.witness
        if self.note:
            text += " (%s)" % self.note
        return text

    def to_dict(self):
        return {'status': self.status, 'witness': self.witness,
                'note': self.note}

def _decide(bounds, total, dT):
    """HOLDS, VIOLATED or UNDECIDED with the first deciding prefix length."""
    n = len(bounds)
    lows = sorted((lo for (lo, hi) in bounds), reverse=True)
    highs = sorted((hi for (lo, hi) in bounds), reverse=True)
    target = dT.prefix_sums(n)
    undecided = None
    for k in range(1, n + 1):
        low_k = max(sum(lows[:k]), total - sum(highs[k:]))
        high_k = min(sum(highs[:k]), total - sum(lows[k:]))
        if low_k > target[k - 1]:
            return (VIOLATED, k)
        if high_k > target[k - 1] and undecided is None:
            undecided = k
    if undecided is not None:
        return (UNDECIDED, undecided)
    return (HOLDS, None)

def _root_bounds(spec, eps=None):
    bounds = []
    for (lam, m) in spec.roots.items():
        bounds.extend([(Rational(lam), Rational(lam))] * m)
    if not spec.is_integral:
        for ((lo, hi), m) in spec.residual.intervals(eps=eps):
            bounds.extend([(Rational(lo), Rational(hi))] * m)
    return bounds

def grone_merris_scan(P, refine_bits=64):
    """Check prefix sums of s(K,K') against d(K,K')^T with exact bounds."""
    spec = P.spectrum()
    dT = degree_sequence(P).partition.conjugate()
    total = int(P.laplacian().trace())

    (status, k) = _decide(_root_bounds(spec), total, dT)
    note = ''
    if status == UNDECIDED:
        (status, k) = _decide(
                _root_bounds(spec, Rational(1, 2 ** refine_bits)), total, dT)
        if status == UNDECIDED:
            note = "interval width 2^-%d straddles prefix %d" % (refine_bits, k)
            log.warning("grone-merris undecided for %r: %s" % (P, note))
    if status == HOLDS:
        k = None
    return GmReport(status, k, note, Partition(spec.values()), dT)

def shifted_pair_spectrum(delta, delta_prime):
    """Spectrum polynomial of a shifted pair from degree sequences alone."""
    if delta.ambient != delta_prime.ambient:
        raise InputError("pair members must share one ambient")
    if not delta_prime.faces <= delta.faces:
        raise PreconditionError("second member must be a subcomplex")
    if not is_shifted(delta) or not is_shifted(delta_prime):
        raise PreconditionError("both members must be shifted")
    d = delta.dim()
    if d is None:
        return SpectrumPolynomial()

    down = {}
    for i in range(0, d + 1):
        P = FamilyPair(Family.of_complex(delta, i),
                Family.of_complex(delta_prime, i - 1))
        down[i] = degree_sequence(P).partition.conjugate()

    terms = {}
    for i in range(-1, d + 1):
        size = delta.f(i) - delta_prime.f(i)
        if not size:
            continue
        parts = list(down.get(i, ())) + list(down.get(i + 1, ()))
        for lam in parts:
            terms[(i + 1, lam)] = terms.get((i + 1, lam), 0) + 1
        if size > len(parts):
            terms[(i + 1, 0)] = size - len(parts)
    return SpectrumPolynomial(terms)

class FamilyRecursionReport(object):
    def __init__(self, holds, ones, lhs, rhs, degree_holds=None):
        self.holds = holds
        self.ones = ones
        self.lhs = lhs
        self.rhs = rhs
        self.degree_holds = degree_holds

    def render(self):
        text = "family recursion %s" % ("HOLDS" if self.holds else "FAILS")
        if self.degree_holds is not None:
            text += ", degree recursion %s" % \
                    ("HOLDS" if self.degree_holds else "FAILS")
        return text

    def to_dict(self):
        return {'holds': self.holds, 'ones': self.ones,
                'degree_holds': self.degree_holds}

def _nonzero_char_poly(K, Kprime):
    return strip_zero_roots(char_poly(family_laplacian(K, Kprime)))[1]

def _add_ones(partition, m):
    parts = list(partition)
    parts.extend([0] * max(0, m - len(parts)))
    return Partition([p + 1 if j < m else p for (j, p) in enumerate(parts)])

def family_pair_recursion_check(P):
    """s(K,K') = 1^m + (s(K-1,K'-1) ∪ s(K/1,K'/1)), m = |K/1| - |K'-1|."""
    K = P.K
    Kprime = P.Kprime
    if not K.ambient:
        raise PreconditionError("family pair has no apex vertex")
    apex = K.ambient[0]
    if not is_near_cone(K, apex) or not is_near_cone(Kprime, apex):
        raise PreconditionError("K and K' must be near-cones with apex %s" %
                (apex,))
    if not Kprime.members <= K.boundary().members:
        raise PreconditionError("K' must lie in the boundary of K")

    Kdel = K.delete(apex)
    Kcon = K.contract(apex)
    Kpdel = Kprime.delete(apex)
    Kpcon = Kprime.contract(apex)
    m = len(Kcon) - len(Kpdel)

    p_del = _nonzero_char_poly(Kdel, Kpdel)
    p_con = _nonzero_char_poly(Kcon, Kpcon)
    a = p_del.degree() + p_con.degree()
    lhs = _nonzero_char_poly(K, Kprime)
    if m >= a:
        rhs = p_del.shift(-1) * p_con.shift(-1) * \
                Poly(X - 1, X, domain=ZZ) ** (m - a)
        holds = lhs == rhs
    else:
        # only the m largest parts move; that needs the eigenvalues
        spectra = [family_spectrum(K, Kprime), family_spectrum(Kdel, Kpdel),
                family_spectrum(Kcon, Kpcon)]
        rhs = None
        if all(s.is_integral for s in spectra):
            union = Partition(spectra[1].values() + spectra[2].values())
            holds = Partition(spectra[0].values()) == _add_ones(union, m)
        else:
            holds = False

    degree_holds = None
    if P.is_shifted() and is_shifted(Kprime):
        union = Partition(list(degree_sequence(FamilyPair(Kdel, Kpdel)).partition
                .conjugate()) + list(degree_sequence(FamilyPair(Kcon, Kpcon))
                .partition.conjugate()))
        degree_holds = degree_sequence(P).partition.conjugate() == \
                _add_ones(union, m)
    log.debug("family recursion on %r: m=%d holds=%s" % (P, m, holds))
    return FamilyRecursionReport(holds, m, lhs, rhs, degree_holds)

class GmCampaignSummary(object):
    def __init__(self):
        self.counts = {HOLDS: 0, VIOLATED: 0, UNDECIDED: 0}
        self.findings = []

    def add(self, P, report):
        self.counts[report.status] += 1
        if report.status != HOLDS:
            self.findings.append((P, report))

    @property
    def clean(self):
        return not self.findings

    def render(self):
        lines = ["pairs=%d HOLDS=%d VIOLATED=%d UNDECIDED=%d" % (
            sum(self.counts.values()), self.counts[HOLDS],
            self.counts[VIOLATED], self.counts[UNDECIDED])]
        for (P, report) in self.findings:
            lines.append("%s K=%s K'=%s" % (report.render(),
                [list(P.K.names(F)) for F in P.K.sorted_members()],
                [list(P.Kprime.names(F)) for F in P.Kprime.sorted_members()]))
        return "\n".join(lines)

def _all_families(ambient, k):
    masks = [sum(1 << j for j in combo)
            for combo in itertools.combinations(range(len(ambient)), k)]
    for r in range(len(masks) + 1):
        for chosen in itertools.combinations(masks, r):
            yield Family(ambient, k, chosen)

def random_family_pair(rng, max_vertices=6, max_k=3):
    n = rng.randint(2, max_vertices)
    k = rng.randint(1, min(max_k, n))
    ambient = tuple(range(1, n + 1))
    density = rng.random()
    K = [sum(1 << j for j in combo)
            for combo in itertools.combinations(range(n), k)
            if rng.random() < density]
    Kp = [sum(1 << j for j in combo)
            for combo in itertools.combinations(range(n), k - 1)
            if rng.random() < 0.3]
    return FamilyPair(Family(ambient, k, K), Family(ambient, k - 1, Kp))

def gm_campaign(exhaustive_vertices=6, random_pairs=10000, seed=0,
        refine_bits=64):
    """Scan every 2-family (with K' empty) on up to the given number of
    vertices, then seeded random family pairs."""
    summary = GmCampaignSummary()
    for n in range(2, exhaustive_vertices + 1):
        ambient = tuple(range(1, n + 1))
        empty = Family(ambient, 1, ())
        for K in _all_families(ambient, 2):
            P = FamilyPair(K, empty)
            summary.add(P, grone_merris_scan(P, refine_bits))
    rng = random.Random(seed)
    for _ in range(random_pairs):
        P = random_family_pair(rng)
        summary.add(P, grone_merris_scan(P, refine_bits))
    log.info("grone-merris campaign: %s" % summary.render().split("\n")[0])
    return summary
