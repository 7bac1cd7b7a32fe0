"""The spectral recursion and the identities around it.

A complex D satisfies the spectral recursion at a vertex e when

    S_D = q S_{D-e} + q t S_{D/e} + (1-q) S_{(D-e, D/e)}.

Multiplying a q-generating function by q adds one to every eigenvalue, so
the identity holds coefficientwise in t exactly when, for every i,

    P_i^D(x) P_i^R(x-1) = P_i^{D-e}(x-1) P_{i-1}^{D/e}(x-1) P_i^R(x)

where P_i^X is the characteristic polynomial of L_{i-1}(X) and R is the
relative face set (D-e) minus (D/e).  That form needs no eigenvalues, so
irrational spectra are checked as exactly as integral ones.
"""

import random

from sympy import Poly, ZZ

from specrec.complex import OrderFilter, RelativeFaceSet, SimplicialComplex, \
        alexander_dual, as_pair, circuit_cone, complement, cone, \
        disjoint_union, dual, join, pair
from specrec.error import InputError
from specrec.laplacian import Q, T, X, betti_poly, betti_rank_oracle, \
        check_hodge_pairing, laplacian_char_poly, s_dd_poly, spectrum, \
        spectrum_poly, strip_root
from specrec import matroid as matroids
from specrec.shifted import shifted_closure
from specrec.util import get_logger, run_tasks

log = get_logger("specrec.recursion")

def _cp(P, i):
    return laplacian_char_poly(P, i)

class DimensionCheck(object):
    def __init__(self, i, lhs, rhs):
        self.i = i
        self.lhs = lhs
        self.rhs = rhs
        self.equal = lhs == rhs

    def to_dict(self):
        return {
            'dim': self.i,
            'holds': self.equal,
            'lhs': [int(c) for c in reversed(self.lhs.all_coeffs())],
            'rhs': [int(c) for c in reversed(self.rhs.all_coeffs())],
        }

class RecursionReport(object):
    """Per-dimension verdicts of the recursion at one vertex."""

    def __init__(self, vertex, per_dimension):
        self.vertex = vertex
        self.per_dimension = per_dimension
        self.holds = all(c.equal for c in per_dimension)
        self.residual_note = ''
        first = self.first_failure
        if first is not None:
            self.residual_note = "first mismatch at t^%d: lhs %s, rhs %s" % (
                    first.i, first.lhs.as_expr(), first.rhs.as_expr())

    @property
    def first_failure(self):
        for c in self.per_dimension:
            if not c.equal:
                return c
        return None

    def render(self):
        return "\n".join("vertex=%s dim=%d %s" % (self.vertex, c.i,
                "HOLDS" if c.equal else "FAILS") for c in self.per_dimension)

    def to_dict(self):
        return {
            'vertex': self.vertex,
            'holds': self.holds,
            'dims': [c.to_dict() for c in self.per_dimension],
            'note': self.residual_note,
        }

def _check(vertex, top, whole, minus, slash, rel, filter_form):
    checks = []
    if top is None:
        return RecursionReport(vertex, checks)
    for i in range(0, top + 2):
        r = i - 1 if filter_form else i
        assert whole.f(i - 1) == minus.f(i - 1) + slash.f(i - 2), \
                "face counts unbalanced at t^%d" % i
        lhs = _cp(whole, i - 1) * _cp(rel, r - 1).shift(-1)
        rhs = _cp(minus, i - 1).shift(-1) * _cp(slash, i - 2).shift(-1) * \
                _cp(rel, r - 1)
        checks.append(DimensionCheck(i, lhs, rhs))
    report = RecursionReport(vertex, checks)
    log.debug("recursion at %s: %s" % (vertex,
        "holds" if report.holds else report.residual_note))
    return report

def check_recursion(delta, e):
    minus = delta.delete(e)
    slash = delta.contract(e)
    rel = RelativeFaceSet(minus.ambient, minus.faces - slash.faces)
    return _check(e, delta.dim(), as_pair(delta), as_pair(minus),
            as_pair(slash), rel, False)

def check_recursion_filter(psi, e):
    """S_Psi = q S_{Psi-e} + q t S_{Psi/e} + (1-q) t S_{(Psi/e, Psi-e)}."""
    minus = psi.delete(e)
    slash = psi.contract(e)
    assert minus.faces <= slash.faces, "filter deletion must lie in contraction"
    rel = RelativeFaceSet(minus.ambient, slash.faces - minus.faces)
    return _check(e, psi.dim(), as_pair(psi), as_pair(minus), as_pair(slash),
            rel, True)

def spoly_recursion_holds(delta, e):
    """The recursion compared on spectrum polynomials; None if non-integral."""
    minus = delta.delete(e)
    slash = delta.contract(e)
    rel = RelativeFaceSet(minus.ambient, minus.faces - slash.faces)
    polys = [spectrum_poly(as_pair(x)) for x in (delta, minus, slash)]
    polys.append(spectrum_poly(rel))
    if not all(p.integral for p in polys):
        return None
    (whole, sm, ss, sr) = [p.to_poly() for p in polys]
    q = Poly(Q, T, Q, domain=ZZ)
    t = Poly(T, T, Q, domain=ZZ)
    return whole == q * sm + q * t * ss + (1 - q) * sr

class SpecializationReport(object):
    def __init__(self, vertex, q0, q1, t0, tm1):
        self.vertex = vertex
        self.q0 = q0
        self.q1 = q1
        self.t0 = t0
        self.tm1 = tm1

    @property
    def holds(self):
        return self.q0 and self.q1 and self.t0 and self.tm1

    def render(self):
        return "vertex=%s q=0 %s q=1 %s t=0 %s t=-1 %s" % (self.vertex,
                *["HOLDS" if x else "FAILS"
                    for x in (self.q0, self.q1, self.t0, self.tm1)])

def check_specializations(delta, e):
    """Betti, face count, vertex count and Euler characteristic forms."""
    minus = delta.delete(e)
    slash = delta.contract(e)
    rel = RelativeFaceSet(minus.ambient, minus.faces - slash.faces)
    top = delta.dim()
    dims = range(-1, top + 1) if top is not None else []

    whole = as_pair(delta)
    q0 = all(betti_rank_oracle(whole, i) == betti_rank_oracle(rel, i)
            for i in dims)
    q1 = all(delta.f(i) == minus.f(i) + slash.f(i - 1) for i in dims)
    if delta.is_loop(e):
        t0 = delta.non_loop_count() == minus.non_loop_count()
    else:
        t0 = delta.non_loop_count() == 1 + minus.non_loop_count()
    tm1 = delta.reduced_euler_char() == \
            minus.reduced_euler_char() - slash.reduced_euler_char()
    return SpecializationReport(e, q0, q1, t0, tm1)

class RecursionSummary(object):
    def __init__(self, reports):
        self.reports = reports

    @property
    def holds(self):
        return all(r.holds for r in self.reports)

    def failing_vertices(self):
        return [r.vertex for r in self.reports if not r.holds]

    def render(self):
        lines = []
        for r in self.reports:
            if r.per_dimension:
                lines.append(r.render())
            lines.append("vertex=%s %s" % (r.vertex,
                "HOLDS" if r.holds else "FAILS"))
        return "\n".join(lines)

    def to_dict(self):
        return {'holds': self.holds,
                'vertices': [r.to_dict() for r in self.reports]}

def check_all_vertices(X, jobs=1):
    """Run the recursion check at every ambient vertex, in ambient order."""
    if isinstance(X, OrderFilter):
        func = check_recursion_filter
    elif isinstance(X, SimplicialComplex):
        func = check_recursion
    else:
        raise InputError("recursion checks need a complex or an order filter")
    reports = run_tasks(func, [(X, e) for e in X.ambient], jobs)
    return RecursionSummary(reports)

# identities sampled by the battery

def check_join_product(P, Qset):
    """S of a join is the product of the S; None if either is non-integral."""
    sp = spectrum_poly(as_pair(P))
    sq = spectrum_poly(as_pair(Qset))
    if not sp.integral or not sq.integral:
        return None
    sj = spectrum_poly(as_pair(join(P, Qset)))
    return sj.integral and sj.to_poly() == sp.to_poly() * sq.to_poly()

def check_circuit_cone_scaling(A, delta):
    """s_i(delta) = s_{i+|A|}(A o delta) for every i."""
    coned = circuit_cone(A, delta)
    P = as_pair(delta)
    top = max(delta.dim() or 0, 0)
    return all(_cp(P, i) == _cp(coned, i + len(A))
            for i in range(-1, top + 1))

def check_dual_reversal(P):
    """s_i(P) = s_{n-i-2}(P*)."""
    P = as_pair(P)
    D = dual(P)
    n = len(P.ambient)
    return all(_cp(P, i) == _cp(D, n - i - 2) for i in range(-1, n))

def check_complement_shift(delta):
    """s_{i-1}(delta) and s_i(delta^c) agree except for the eigenvalue n."""
    n = len(delta.ambient)
    P = as_pair(delta)
    C = as_pair(complement(delta))
    return all(strip_root(_cp(P, i - 1), n) == strip_root(_cp(C, i), n)
            for i in range(-1, n))

def check_union_formula(delta, gamma):
    """S_{D+G} = S_D + S_G + (1+t)(q^{n+m} - q^n - q^m) + t, per t-degree."""
    union = as_pair(disjoint_union(delta, gamma))
    D = as_pair(delta)
    G = as_pair(gamma)
    n = delta.non_loop_count()
    m = gamma.non_loop_count()

    def lin(lam):
        return Poly(X - lam, X, domain=ZZ)

    top = max(union.dim(), 0)
    for i in range(0, top + 2):
        lhs = _cp(union, i - 1)
        rhs = _cp(D, i - 1) * _cp(G, i - 1)
        if i in (0, 1):
            lhs = lhs * lin(n) * lin(m)
            rhs = rhs * lin(n + m)
        if i == 1:
            rhs = rhs * lin(0)
        if lhs != rhs:
            return False
    return True

def check_precursor(P):
    """t S = (1+t) S'' + t B; None if non-integral."""
    P = as_pair(P)
    s = spectrum_poly(P)
    sdd = s_dd_poly(P)
    if not s.integral or not sdd.integral:
        return None
    t = Poly(T, T, Q, domain=ZZ)
    B = Poly(sum(b * T ** i for (i, b) in enumerate(betti_poly(P))) + 0 * T,
            T, Q, domain=ZZ)
    return t * s.to_poly() == (1 + t) * sdd.to_poly() + t * B

def check_betti(P):
    P = as_pair(P)
    top = P.dim()
    if top is None:
        return True
    return all(spectrum(P, i).multiplicity(0) == betti_rank_oracle(P, i)
            for i in range(-1, top + 1))

def check_cone_down(v, gamma, gamma_prime=None):
    """S'' of (v*G, v*G') is q t S_{(G, G')}; None if non-integral."""
    if gamma_prime is None:
        gamma_prime = SimplicialComplex.void(gamma.ambient)
    base = pair(gamma, gamma_prime)
    coned = pair(cone(v, gamma), cone(v, gamma_prime))
    sdd = s_dd_poly(coned)
    s = spectrum_poly(base)
    if not sdd.integral or not s.integral:
        return None
    qt = Poly(Q * T, T, Q, domain=ZZ)
    return sdd.to_poly() == qt * s.to_poly()

def check_skeleta(delta, e):
    """check(D) iff check(D^(d-1)) and check(pure d-skeleton of D)."""
    d = delta.dim()
    if d is None or d < 0:
        return None
    whole = check_recursion(delta, e).holds
    parts = check_recursion(delta.skeleton(d - 1), e).holds and \
            check_recursion(delta.pure_skeleton(d), e).holds
    return whole == parts

def check_duality_forms(delta, e):
    """The recursion at e holds for D, its Alexander dual, and (as filters)
    its dual and complement, all or none."""
    verdicts = [check_recursion(delta, e).holds,
            check_recursion(alexander_dual(delta), e).holds,
            check_recursion_filter(dual(delta), e).holds,
            check_recursion_filter(complement(delta), e).holds]
    return len(set(verdicts)) == 1

def check_join_preserves(delta, gamma, e):
    """check(D, e) implies check(D * G, e)."""
    if not check_recursion(delta, e).holds:
        return None
    return check_recursion(join(delta, gamma), e).holds

def check_union_preserves(delta, gamma, e):
    if delta.is_void or gamma.is_void or not check_recursion(delta, e).holds:
        return None
    return check_recursion(disjoint_union(delta, gamma), e).holds

def check_loop_holds(delta, name):
    padded = SimplicialComplex(delta.ambient + (name,), delta.faces,
            check=False)
    return check_recursion(padded, name).holds

def check_magic_chi(M, e):
    if M.is_loop(e) or M.is_isthmus(e):
        return None
    rhs = sum(abs(M.contract_set(M.names(C)).reduced_euler_char())
            for C in M.circuits_through(e))
    return abs(M.reduced_euler_char()) == rhs

def check_krs_step(M):
    return matroids.basis_activity_poly(M) == matroids.flat_activity_poly(M)

def check_e_step(M, e, rng, reorderings=5):
    """The element-restricted identity, and order independence of its left
    side under random reorderings of the ground set."""
    lhs = matroids.basis_activity_poly(M, e)
    if lhs != matroids.flat_activity_poly(M, e):
        return False
    for _ in range(reorderings):
        order = list(M.ground)
        rng.shuffle(order)
        if matroids.basis_activity_poly(M.reorder(order), e) != lhs:
            return False
    return True

def check_three_way(M):
    direct = spectrum_poly(as_pair(M.independence_complex()))
    return direct.integral and \
            direct == matroids.spectrum_poly_krs(M) == \
            matroids.spectrum_poly_recursive(M)

# random instances

def random_complex(rng, max_vertices=6, prefix='v', max_facets=4):
    n = rng.randint(1, max_vertices)
    ambient = tuple("%s%d" % (prefix, j) for j in range(n))
    facets = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(0, min(n, 4))
        facets.append(rng.sample(ambient, size))
    return SimplicialComplex.from_facets(ambient, facets)

def random_shifted(rng, max_vertices=6):
    n = rng.randint(1, max_vertices)
    seeds = [rng.randrange(1 << n) for _ in range(rng.randint(1, 3))]
    return shifted_closure(tuple(range(1, n + 1)), seeds)

def random_matroid(rng):
    kind = rng.choice(('uniform', 'graphic', 'sum'))
    if kind == 'uniform':
        n = rng.randint(0, 5)
        return matroids.uniform(rng.randint(0, n), n)
    if kind == 'graphic':
        nodes = list(range(rng.randint(2, 4)))
        edges = [tuple(rng.sample(nodes, 2)) if rng.random() < 0.85
                else (nodes[0], nodes[0]) for _ in range(rng.randint(1, 6))]
        return matroids.graphic(edges, names=["e%d" % j
            for j in range(len(edges))])
    n1 = rng.randint(1, 3)
    n2 = rng.randint(1, 3)
    M1 = matroids.uniform(rng.randint(0, n1), n1)
    M2 = matroids.uniform(rng.randint(0, n2), n2)
    M2 = matroids.Matroid(tuple("b%d" % v for v in M2.ground), M2.bases,
            check=False)
    return matroids.direct_sum(M1, M2)

class BatterySummary(object):
    def __init__(self):
        self.results = {}
        self.failures = []

    def record(self, name, verdict, detail=''):
        counts = self.results.setdefault(name, [0, 0, 0])
        if verdict is None:
            counts[2] += 1
        elif verdict:
            counts[0] += 1
        else:
            counts[1] += 1
            self.failures.append((name, detail))

    @property
    def holds(self):
        return not self.failures

    def render(self):
        lines = ["%s passed=%d failed=%d skipped=%d" % (name, p, f, s)
                for (name, (p, f, s)) in sorted(self.results.items())]
        for (name, detail) in self.failures:
            lines.append("FAILED %s %s" % (name, detail))
        return "\n".join(lines)

    def to_dict(self):
        return {'holds': self.holds,
                'identities': dict((name, {'passed': p, 'failed': f,
                    'skipped': s})
                    for (name, (p, f, s)) in self.results.items()),
                'failures': [list(x) for x in self.failures]}

def _facets_text(delta):
    return repr([list(delta.names(F)) for F in delta.facets()])

def identity_battery(seed=0, instances=200, max_vertices=6):
    """Sample random complexes, shifted complexes and matroids and verify
    every cross-module identity on them."""
    rng = random.Random(seed)
    summary = BatterySummary()
    for count in range(instances):
        delta = random_complex(rng, max_vertices)
        gamma = random_complex(rng, 3, prefix='w')
        e = rng.choice(delta.ambient)
        text = _facets_text(delta)

        summary.record('circuit-cone-scaling',
                check_circuit_cone_scaling(('x', 'y')[:rng.randint(1, 2)],
                    delta), text)
        summary.record('dual-reversal', check_dual_reversal(delta), text)
        summary.record('complement-shift', check_complement_shift(delta), text)
        summary.record('union-formula', check_union_formula(delta, gamma), text)
        summary.record('skeleta', check_skeleta(delta, e), text)
        summary.record('alexander-dual', check_duality_forms(delta, e), text)
        summary.record('hodge-pairing',
                all(check_hodge_pairing(as_pair(delta)).values()), text)
        summary.record('betti-kernel', check_betti(delta), text)
        summary.record('specializations',
                check_specializations(delta, e).holds, text)
        summary.record('union-preserves',
                check_union_preserves(delta, gamma, e), text)
        summary.record('join-preserves',
                check_join_preserves(delta, gamma, e), text)
        summary.record('loop', check_loop_holds(delta, 'z'), text)

        shifted = random_shifted(rng, max_vertices)
        other = random_shifted(rng, 3)
        other = SimplicialComplex(tuple("s%d" % v for v in other.ambient),
                other.faces, check=False)
        stext = _facets_text(shifted)
        summary.record('join-product', check_join_product(shifted, other),
                stext)
        summary.record('precursor', check_precursor(shifted), stext)
        summary.record('precursor', check_precursor(delta), text)
        summary.record('cone-down', check_cone_down('c', shifted), stext)
        summary.record('shifted-recursion', check_recursion(shifted,
            rng.choice(shifted.ambient)).holds, stext)

        M = random_matroid(rng)
        mtext = repr(M)
        summary.record('three-way', check_three_way(M), mtext)
        summary.record('krs-step', check_krs_step(M), mtext)
        if M.ground:
            f = rng.choice(M.ground)
            summary.record('magic-chi', check_magic_chi(M, f), mtext)
            summary.record('e-step', check_e_step(M, f, rng), mtext)
            summary.record('matroid-recursion', check_recursion(
                M.independence_complex(), f).holds, mtext)
        if (count + 1) % 50 == 0:
            log.debug("battery: %d/%d instances" % (count + 1, instances))

    log.info("battery seed=%d instances=%d: %s" % (seed, instances,
        "all identities hold" if summary.holds else
        "%d failures" % len(summary.failures)))
    return summary
