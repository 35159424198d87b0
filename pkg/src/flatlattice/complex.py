"""Finite abstract simplicial complexes given by their facets.

Vertices carry arbitrary hashable labels; internally a face is a bitmask
over vertex indices.  The void complex (no faces) has no facets, while the
complex {empty face} has the single facet 0.
"""

from __future__ import annotations

from typing import Hashable, Iterable

from . import subsets as ss
from .errors import FaceNotInComplex, InvalidParameters, NotASubcomplex, TooLarge
from .matroid import Matroid
from .poset import Poset

ALEXANDER_DUAL_MAX_GROUND = 20


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _submasks(mask: int) -> list[int]:
    subs = [0]
    for i in _bits(mask):
        b = 1 << i
        subs += [s | b for s in subs]
    return subs


def _maximal(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    out = []
    for m in uniq:
        if not any(m & ~f == 0 for f in out):
            out.append(m)
    return out


class SimplicialComplex:
    """Simplicial complex on a fixed vertex list.

    ``vertices`` may contain labels that span no face (they are simply not
    faces); equality compares face sets by label.
    """

    def __init__(self, facets: Iterable[Iterable[Hashable]] | None = None, vertices=None, *, _masks=None,
                 _maximal_given=False):
        if _masks is not None:
            self.vertices = tuple(vertices)
            self.vindex = {v: i for i, v in enumerate(self.vertices)}
            self.facets = tuple(sorted(set(_masks) if _maximal_given else _maximal(_masks)))
        else:
            facets = [tuple(f) for f in (facets or [])]
            if vertices is None:
                seen = {}
                for f in facets:
                    for v in f:
                        seen.setdefault(v, None)
                vertices = sorted(seen, key=_label_key)
            self.vertices = tuple(vertices)
            self.vindex = {v: i for i, v in enumerate(self.vertices)}
            masks = []
            for f in facets:
                m = 0
                for v in f:
                    if v not in self.vindex:
                        raise InvalidParameters(f"vertex {v!r} not in the vertex list")
                    m |= 1 << self.vindex[v]
                masks.append(m)
            self.facets = tuple(sorted(_maximal(masks)))
        self._faces = None

    @classmethod
    def from_masks(cls, vertices, masks) -> "SimplicialComplex":
        return cls(vertices=vertices, _masks=list(masks))

    @classmethod
    def void(cls, vertices=()) -> "SimplicialComplex":
        return cls.from_masks(vertices, [])

    @classmethod
    def empty_face(cls, vertices=()) -> "SimplicialComplex":
        return cls.from_masks(vertices, [0])

    @classmethod
    def simplex(cls, vertices) -> "SimplicialComplex":
        vertices = tuple(vertices)
        return cls.from_masks(vertices, [(1 << len(vertices)) - 1])

    # -- faces ---------------------------------------------------------
    @property
    def is_void(self) -> bool:
        return not self.facets

    def faces_by_dim(self) -> dict[int, list[int]]:
        """Faces (as masks) keyed by dimension, -1 for the empty face."""
        if self._faces is None:
            allf = set()
            for f in self.facets:
                allf.update(_submasks(f))
            byd: dict[int, list[int]] = {}
            for m in allf:
                byd.setdefault(bin(m).count("1") - 1, []).append(m)
            for d in byd:
                byd[d].sort()
            self._faces = byd
        return self._faces

    def faces(self, dim: int | None = None) -> list[int]:
        byd = self.faces_by_dim()
        if dim is not None:
            return list(byd.get(dim, []))
        return [m for d in sorted(byd) for m in byd[d]]

    def num_faces(self) -> int:
        return sum(len(v) for v in self.faces_by_dim().values())

    def f_vector(self) -> list[int]:
        """(f_-1, f_0, ..., f_dim)."""
        byd = self.faces_by_dim()
        if not byd:
            return []
        return [len(byd.get(d, [])) for d in range(-1, max(byd) + 1)]

    @property
    def dim(self) -> int:
        if self.is_void:
            return -2
        return max(bin(f).count("1") for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({bin(f).count("1") for f in self.facets}) <= 1

    def mask(self, face: Iterable[Hashable]) -> int:
        m = 0
        for v in face:
            if v not in self.vindex:
                raise FaceNotInComplex(f"vertex {v!r} is not a vertex of the complex")
            m |= 1 << self.vindex[v]
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(self.vertices[i] for i in _bits(mask))

    def has_mask(self, m: int) -> bool:
        return any(m & ~f == 0 for f in self.facets)

    def __contains__(self, face) -> bool:
        try:
            m = self.mask(face)
        except FaceNotInComplex:
            return False
        return self.has_mask(m)

    def face_set(self) -> frozenset:
        return frozenset(frozenset(self.labels(m)) for m in self.faces())

    def facet_labels(self) -> list[tuple]:
        return sorted((self.labels(f) for f in self.facets), key=lambda f: (len(f), [_label_key(v) for v in f]))

    def used_vertices(self) -> tuple:
        m = 0
        for f in self.facets:
            m |= f
        return self.labels(m)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.face_set() == other.face_set()

    def __hash__(self):
        return hash(self.face_set())

    def __repr__(self):
        if self.is_void:
            return "SimplicialComplex(void)"
        return f"SimplicialComplex(dim={self.dim}, facets={len(self.facets)}, vertices={len(self.used_vertices())})"

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic, the empty face counted in degree -1."""
        return sum((-1) ** d * len(fs) for d, fs in self.faces_by_dim().items())

    # -- constructions -------------------------------------------------
    def link(self, face) -> "SimplicialComplex":
        s = self.mask(face)
        fs = [f & ~s for f in self.facets if s & ~f == 0]
        if not fs:
            raise FaceNotInComplex(f"{tuple(face)!r} is not a face")
        return SimplicialComplex.from_masks(self.vertices, fs)

    def link_mask(self, s: int) -> "SimplicialComplex":
        fs = [f & ~s for f in self.facets if s & ~f == 0]
        if not fs:
            raise FaceNotInComplex("not a face")
        return SimplicialComplex.from_masks(self.vertices, fs)

    def star(self, face) -> "SimplicialComplex":
        s = self.mask(face)
        fs = [f for f in self.facets if s & ~f == 0]
        if not fs:
            raise FaceNotInComplex(f"{tuple(face)!r} is not a face")
        return SimplicialComplex.from_masks(self.vertices, fs)

    def induced(self, keep) -> "SimplicialComplex":
        """Full subcomplex on the given vertex labels."""
        k = 0
        for v in keep:
            if v in self.vindex:
                k |= 1 << self.vindex[v]
        return SimplicialComplex.from_masks(self.vertices, [f & k for f in self.facets])

    def delete(self, other) -> "SimplicialComplex":
        """Remove every face touching a vertex of ``other`` (a complex or a
        collection of vertex labels)."""
        if isinstance(other, SimplicialComplex):
            drop = set(other.used_vertices())
        else:
            drop = set(other)
        return self.induced([v for v in self.vertices if v not in drop])

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        for f in self.facets:
            labels = self.labels(f)
            if labels not in other:
                return False
        return True

    def relabel(self, fn) -> "SimplicialComplex":
        return SimplicialComplex.from_masks([fn(v) for v in self.vertices], self.facets)


def _label_key(v):
    if isinstance(v, tuple):
        return (1, tuple(_label_key(x) for x in v))
    if isinstance(v, int):
        return (0, v)
    return (2, repr(v))


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    common = set(A.vertices) & set(B.vertices)
    if common:
        raise InvalidParameters(f"join needs disjoint vertex sets; shared: {sorted(common, key=_label_key)}")
    shift = len(A.vertices)
    masks = [a | (b << shift) for a in A.facets for b in B.facets]
    return SimplicialComplex.from_masks(A.vertices + B.vertices, masks)


def cone(A: SimplicialComplex, apex="*") -> SimplicialComplex:
    if apex in A.vindex:
        raise InvalidParameters(f"apex {apex!r} is already a vertex")
    return join(A, SimplicialComplex.simplex([apex]))


def alexander_dual(A: SimplicialComplex, ground=None) -> SimplicialComplex:
    """{s subset of ground : ground minus s is not a face of A}."""
    ground = tuple(A.vertices if ground is None else ground)
    g = len(ground)
    if g > ALEXANDER_DUAL_MAX_GROUND:
        raise TooLarge(f"Alexander dual enumerates 2^{g} subsets; cap is {ALEXANDER_DUAL_MAX_GROUND}")
    missing = set(A.used_vertices()) - set(ground)
    if missing:
        raise InvalidParameters(f"vertices {missing} are outside the ground set")
    # facets of A re-expressed over the ground indexing
    gidx = {v: i for i, v in enumerate(ground)}
    fac = [sum(1 << gidx[v] for v in A.labels(f)) for f in A.facets]
    full = (1 << g) - 1
    faces = []
    for s in range(full + 1):
        comp = full & ~s
        if not any(comp & ~f == 0 for f in fac):
            faces.append(s)
    return SimplicialComplex.from_masks(ground, faces)


# -- complexes attached to a matroid ------------------------------------

def _ground_labels(M: Matroid):
    return tuple(range(1, M.n + 1))


def independence_complex(M: Matroid) -> SimplicialComplex:
    return SimplicialComplex.from_masks(_ground_labels(M), M.bases())


def cospanning_complex(M: Matroid) -> SimplicialComplex:
    E = M.ground
    return SimplicialComplex.from_masks(_ground_labels(M), [E & ~B for B in M.bases()])


def nonspanning_complex(M: Matroid) -> SimplicialComplex:
    """Proper non-spanning subsets; its facets are the hyperplanes."""
    if M.rank == 0:
        return SimplicialComplex.void(_ground_labels(M))
    return SimplicialComplex.from_masks(_ground_labels(M), M.flats_by_rank[M.rank - 1])


# -- order complexes --------------------------------------------------------

class OrderComplex(SimplicialComplex):
    """Chains of a poset of flats; vertex i is ``poset.elements[i]``."""

    def __init__(self, poset):
        self.poset = poset
        masks = [sum(1 << i for i in ch) for ch in poset.maximal_chains()]
        # maximal chains are pairwise incomparable
        super().__init__(vertices=poset.elements, _masks=masks or [0], _maximal_given=True)

    def __repr__(self):
        return f"OrderComplex(dim={self.dim}, facets={len(self.facets)}, poset={len(self.poset)})"

    def chain_labels(self, mask: int) -> list[str]:
        return [ss.fmt(x) for x in self.labels(mask)]


def boolean_poset(n: int):
    return Poset(n, range(1, (1 << n) - 1), source="boolean proper part")


def order_complex_deletion(D: OrderComplex, Q) -> SimplicialComplex:
    """Faces of the order complex avoiding every element of Q."""
    qset = set(Q)
    P = D.poset
    keep = [x for x in P.elements if x not in qset]
    return OrderComplex(P.induced(keep))


def complement_complexes(M: Matroid):
    """(B - L, B - NS) inside the order complex of the Boolean lattice."""
    B = OrderComplex(boolean_poset(M.n))
    L = set(M.proper_flats)
    NS = {S for S in range(1, M.ground) if M.rank_of(S) < M.rank}
    return order_complex_deletion(B, L), order_complex_deletion(B, NS)


def check_subcomplex(A: SimplicialComplex, B: SimplicialComplex):
    if not B.is_subcomplex_of(A):
        raise NotASubcomplex("the second complex is not a subcomplex of the first")
