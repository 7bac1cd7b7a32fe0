"""Faces, simplicial complexes, order filters and relative face sets.

A face is an integer bitmask over an ordered ambient vertex list: bit j is
set when the j-th ambient vertex belongs to the face, so the empty face is 0.
Every face set carries its ambient explicitly; ambient vertices lying in no
face are loops.  A complex with no faces at all is VOID, which is a
different value from the complex {0} holding only the empty face.

All face sets are immutable once built and compare equal when both their
kind, ambient and face set agree.  A simplicial pair or order-filter pair is
represented canonically by the RelativeFaceSet of its face difference.
"""

from specrec.error import InputError
from specrec.util import get_logger

MAX_VERTICES = 64

log = get_logger("specrec.complex")

def popcount(mask):
    return bin(mask).count("1")

def face_indices(mask):
    """Ambient positions of the vertices of a face, ascending."""
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out

def squeeze(mask, j):
    """Drop bit j from mask, moving the higher bits down one place."""
    low = mask & ((1 << j) - 1)
    return low | ((mask >> (j + 1)) << j)

def submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask

def downward_closure(masks):
    faces = set()
    for m in masks:
        if m in faces:
            continue
        faces.update(submasks(m))
    return faces

def upward_closure(masks, nverts):
    full = (1 << nverts) - 1
    faces = set()
    for m in masks:
        for sub in submasks(full & ~m):
            faces.add(m | sub)
    return faces

def order_ideals(elements, lower_covers):
    """Yield every order ideal of a finite poset exactly once.

    elements must be listed in a linear extension, so that the lower covers
    of an element always precede it."""
    chosen = set()

    def visit(pos):
        if pos == len(elements):
            yield frozenset(chosen)
            return
        x = elements[pos]
        for ideal in visit(pos + 1):
            yield ideal
        if all(c in chosen for c in lower_covers(x)):
            chosen.add(x)
            for ideal in visit(pos + 1):
                yield ideal
            chosen.remove(x)

    return visit(0)

class FaceSet(object):
    """A finite set of faces over an ordered ambient vertex list."""

    kind = 'faces'

    def __init__(self, ambient, faces):
        self.ambient = tuple(ambient)
        if len(self.ambient) > MAX_VERTICES:
            raise InputError("at most %d vertices are supported, got %d" %
                    (MAX_VERTICES, len(self.ambient)))
        self._index = {}
        for (j, v) in enumerate(self.ambient):
            if v in self._index:
                raise InputError("duplicate vertex: %s" % (v,))
            self._index[v] = j

        self.faces = frozenset(faces)
        full = (1 << len(self.ambient)) - 1
        for F in self.faces:
            if F < 0 or F & ~full:
                raise InputError("face %r lies outside the ambient" % (F,))

        self._by_dim = {}
        for F in self.faces:
            self._by_dim.setdefault(popcount(F) - 1, []).append(F)
        for faces_i in self._by_dim.values():
            faces_i.sort()

        self._hash = None

    def _key(self):
        return (self.kind, self.ambient, self.faces)

    def __eq__(self, other):
        if not isinstance(other, FaceSet):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return "<%s on %s: %d faces>" % (self.__class__.__name__,
                ",".join(str(v) for v in self.ambient), len(self.faces))

    def __len__(self):
        return len(self.faces)

    def __contains__(self, face):
        return face in self.faces

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise InputError("unknown vertex: %s" % (v,))

    def bit(self, v):
        return 1 << self.index(v)

    def mask(self, names):
        m = 0
        for v in names:
            m |= self.bit(v)
        return m

    def names(self, mask):
        return tuple(self.ambient[j] for j in face_indices(mask))

    @property
    def is_void(self):
        return not self.faces

    def dim(self):
        """Largest face dimension, or None when there are no faces."""
        if not self._by_dim:
            return None
        return max(self._by_dim)

    def faces_of_dim(self, i):
        return list(self._by_dim.get(i, ()))

    def f(self, i):
        return len(self._by_dim.get(i, ()))

    def f_vector(self):
        """(f_-1, f_0, ..., f_dim)."""
        d = self.dim()
        if d is None:
            return ()
        return tuple(self.f(i) for i in range(-1, d + 1))

    def reduced_euler_char(self):
        return sum((-1 if i % 2 else 1) * len(faces_i)
                for (i, faces_i) in self._by_dim.items())

    def support(self):
        m = 0
        for F in self.faces:
            m |= F
        return m

    def non_loop_count(self):
        return popcount(self.support())

    def loops(self):
        s = self.support()
        return tuple(v for (j, v) in enumerate(self.ambient)
                if not s & (1 << j))

    def is_loop(self, e):
        return not self.support() & self.bit(e)

    def _remaining_ambient(self, e):
        j = self.index(e)
        return (j, self.ambient[:j] + self.ambient[j + 1:])

class SimplicialComplex(FaceSet):
    kind = 'complex'

    def __init__(self, ambient, faces, check=True):
        FaceSet.__init__(self, ambient, faces)
        if check:
            for F in self.faces:
                for j in face_indices(F):
                    if F & ~(1 << j) not in self.faces:
                        raise InputError("face set is not downward closed")

    @classmethod
    def from_facets(cls, ambient, facets):
        ambient = tuple(ambient)
        index = dict((v, j) for (j, v) in enumerate(ambient))
        masks = []
        for facet in facets:
            m = 0
            for v in facet:
                if v not in index:
                    raise InputError("facet %s contains unknown vertex %s" %
                            (list(facet), v))
                m |= 1 << index[v]
            masks.append(m)
        return cls(ambient, downward_closure(masks), check=False)

    @classmethod
    def void(cls, ambient):
        return cls(ambient, (), check=False)

    def facets(self):
        out = []
        nverts = len(self.ambient)
        for F in self.faces:
            if not any(F | (1 << j) in self.faces
                    for j in range(nverts) if not F & (1 << j)):
                out.append(F)
        return sorted(out)

    def is_isthmus(self, e):
        b = self.bit(e)
        facets = self.facets()
        return bool(facets) and all(F & b for F in facets)

    def delete(self, e):
        (j, ambient) = self._remaining_ambient(e)
        b = 1 << j
        return SimplicialComplex(ambient,
                [squeeze(F, j) for F in self.faces if not F & b], check=False)

    def contract(self, e):
        (j, ambient) = self._remaining_ambient(e)
        b = 1 << j
        return SimplicialComplex(ambient,
                [squeeze(F & ~b, j) for F in self.faces if F & b], check=False)

    def skeleton(self, s):
        return SimplicialComplex(self.ambient,
                [F for F in self.faces if popcount(F) <= s + 1], check=False)

    def pure_skeleton(self, s):
        return SimplicialComplex(self.ambient,
                downward_closure(self.faces_of_dim(s)), check=False)

    def star(self, e):
        b = self.bit(e)
        return SimplicialComplex(self.ambient,
                downward_closure([F for F in self.facets() if F & b]),
                check=False)

class OrderFilter(FaceSet):
    kind = 'filter'

    def __init__(self, ambient, faces, check=True):
        FaceSet.__init__(self, ambient, faces)
        if check:
            nverts = len(self.ambient)
            for F in self.faces:
                for j in range(nverts):
                    if F | (1 << j) not in self.faces:
                        raise InputError("face set is not upward closed")

    @classmethod
    def from_minimal(cls, ambient, minimal):
        ambient = tuple(ambient)
        index = dict((v, j) for (j, v) in enumerate(ambient))
        masks = []
        for member in minimal:
            m = 0
            for v in member:
                if v not in index:
                    raise InputError("member %s contains unknown vertex %s" %
                            (list(member), v))
                m |= 1 << index[v]
            masks.append(m)
        return cls(ambient, upward_closure(masks, len(ambient)), check=False)

    def minimal(self):
        return sorted(F for F in self.faces
                if not any(F & ~(1 << j) in self.faces
                    for j in face_indices(F)))

    def delete(self, e):
        (j, ambient) = self._remaining_ambient(e)
        b = 1 << j
        return OrderFilter(ambient,
                [squeeze(F, j) for F in self.faces if not F & b], check=False)

    def contract(self, e):
        (j, ambient) = self._remaining_ambient(e)
        b = 1 << j
        return OrderFilter(ambient,
                [squeeze(F & ~b, j) for F in self.faces if F & b], check=False)

class RelativeFaceSet(FaceSet):
    """The face difference of a simplicial or order-filter pair.

    No closure condition applies; any face set is a valid difference."""

    kind = 'pair'

def delete(X, e):
    return X.delete(e)

def contract(X, e):
    return X.contract(e)

def filter_delete(psi, e):
    return psi.delete(e)

def filter_contract(psi, e):
    return psi.contract(e)

def as_pair(X):
    if isinstance(X, RelativeFaceSet):
        return X
    return RelativeFaceSet(X.ambient, X.faces)

def pair(delta, delta_prime):
    """Canonical form of the simplicial pair (delta, delta_prime)."""
    if delta.ambient != delta_prime.ambient:
        raise InputError("pair members must share one ambient")
    if not delta_prime.faces <= delta.faces:
        raise InputError("second member of a pair must be a subcomplex")
    return RelativeFaceSet(delta.ambient, delta.faces - delta_prime.faces)

def filter_pair(psi, psi_prime):
    """Canonical form of the order-filter pair (psi, psi_prime).

    Realized as the simplicial pair of complements, whose difference is
    psi minus psi_prime."""
    if psi.ambient != psi_prime.ambient:
        raise InputError("pair members must share one ambient")
    if not psi_prime.faces <= psi.faces:
        raise InputError("second member of a filter pair must be contained in the first")
    return pair(complement(psi_prime), complement(psi))

def _check_disjoint(A, B):
    common = set(A) & set(B)
    if common:
        raise InputError("ambients overlap in %s" %
                ",".join(sorted(str(v) for v in common)))

def join(P, Q):
    """All disjoint unions F+G with F in P and G in Q.

    The join of two complexes is a complex; any other combination is a
    relative face set."""
    _check_disjoint(P.ambient, Q.ambient)
    shift = len(P.ambient)
    faces = set(F | (G << shift) for F in P.faces for G in Q.faces)
    ambient = P.ambient + Q.ambient
    if isinstance(P, SimplicialComplex) and isinstance(Q, SimplicialComplex):
        return SimplicialComplex(ambient, faces, check=False)
    return RelativeFaceSet(ambient, faces)

def cone(v, gamma):
    return join(SimplicialComplex((v,), (0, 1), check=False), gamma)

def _power_set(n):
    return range(1 << n)

def dual(X):
    full = (1 << len(X.ambient)) - 1
    faces = [full & ~F for F in X.faces]
    if isinstance(X, SimplicialComplex):
        return OrderFilter(X.ambient, faces, check=False)
    if isinstance(X, OrderFilter):
        return SimplicialComplex(X.ambient, faces, check=False)
    return RelativeFaceSet(X.ambient, faces)

def complement(X):
    faces = [F for F in _power_set(len(X.ambient)) if F not in X.faces]
    if isinstance(X, SimplicialComplex):
        return OrderFilter(X.ambient, faces, check=False)
    if isinstance(X, OrderFilter):
        return SimplicialComplex(X.ambient, faces, check=False)
    raise InputError("complement is defined for complexes and filters only")

def alexander_dual(X):
    return complement(dual(X))

def disjoint_union(delta, gamma):
    if delta.is_void or gamma.is_void:
        raise InputError("disjoint union needs two non-void complexes")
    _check_disjoint(delta.ambient, gamma.ambient)
    shift = len(delta.ambient)
    faces = set(delta.faces)
    faces.update(G << shift for G in gamma.faces)
    return SimplicialComplex(delta.ambient + gamma.ambient, faces,
            check=False)

def circuit_cone(A, delta):
    """{A+F : F in delta}, with the vertices of A placed after delta's."""
    A = tuple(A)
    _check_disjoint(A, delta.ambient)
    top = ((1 << len(A)) - 1) << len(delta.ambient)
    return RelativeFaceSet(delta.ambient + A, [F | top for F in delta.faces])

def enumerate_complexes(ambient):
    """Every non-void simplicial complex on the given ambient."""
    ambient = tuple(ambient)
    if len(ambient) > 5:
        raise InputError("exhaustive enumeration is limited to 5 vertices")
    elements = sorted(_power_set(len(ambient)), key=lambda m: (popcount(m), m))

    def lower_covers(m):
        return [m & ~(1 << j) for j in face_indices(m)]

    for ideal in order_ideals(elements, lower_covers):
        if ideal:
            yield SimplicialComplex(ambient, ideal, check=False)

class Family(object):
    """A k-family: a set of k-element subsets of an ordered ground set."""

    def __init__(self, ambient, k, members):
        self.ambient = tuple(ambient)
        self.k = k
        self.members = frozenset(members)
        if len(self.ambient) > MAX_VERTICES:
            raise InputError("at most %d vertices are supported" % MAX_VERTICES)
        full = (1 << len(self.ambient)) - 1
        for F in self.members:
            if popcount(F) != k or F & ~full:
                raise InputError("member %r of a %d-family has the wrong size" %
                        (F, k))
        self._index = dict((v, j) for (j, v) in enumerate(self.ambient))

    @classmethod
    def from_names(cls, ambient, k, members):
        ambient = tuple(ambient)
        index = dict((v, j) for (j, v) in enumerate(ambient))
        masks = []
        for member in members:
            m = 0
            for v in member:
                if v not in index:
                    raise InputError("member %s contains unknown vertex %s" %
                            (list(member), v))
                m |= 1 << index[v]
            masks.append(m)
        return cls(ambient, k, masks)

    @classmethod
    def of_complex(cls, delta, i):
        """The family of i-dimensional faces of a complex."""
        return cls(delta.ambient, i + 1, delta.faces_of_dim(i))

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return (self.ambient, self.k, self.members) == \
                (other.ambient, other.k, other.members)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.ambient, self.k, self.members))

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return "<Family k=%d on %s: %d members>" % (self.k,
                ",".join(str(v) for v in self.ambient), len(self.members))

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise InputError("unknown vertex: %s" % (v,))

    def names(self, mask):
        return tuple(self.ambient[j] for j in face_indices(mask))

    def sorted_members(self):
        return sorted(self.members)

    def delete(self, e):
        j = self.index(e)
        b = 1 << j
        return Family(self.ambient[:j] + self.ambient[j + 1:], self.k,
                [squeeze(F, j) for F in self.members if not F & b])

    def contract(self, e):
        j = self.index(e)
        b = 1 << j
        return Family(self.ambient[:j] + self.ambient[j + 1:], self.k - 1,
                [squeeze(F & ~b, j) for F in self.members if F & b])

    def boundary(self):
        return Family(self.ambient, self.k - 1,
                set(F & ~(1 << j) for F in self.members
                    for j in face_indices(F)))

    def restrict(self, masks):
        return Family(self.ambient, self.k, self.members & frozenset(masks))

    def generated_complex(self):
        return SimplicialComplex(self.ambient,
                downward_closure(self.members), check=False)
