"""Matroids on [n] stored canonically as their flats grouped by rank.

Every constructor funnels into :meth:`Matroid.from_flats`-style validation
(flat axioms: the ground set is a flat, flats are closed under
intersection, and the covers of every flat partition its complement).
Loops are rejected everywhere except in :func:`dual`, which may need them
(the dual of a matroid with coloops).
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from . import subsets as ss
from .errors import (
    ExchangeAxiomFails,
    InvalidParameters,
    Loops,
    NotALattice,
    PartitionAxiomFails,
)

__all__ = [
    "Matroid",
    "from_flats",
    "from_bases",
    "from_rank_function",
    "uniform",
    "boolean",
    "fano",
    "graphic",
    "rank3_from_lines",
    "seven_point_example",
    "SEVEN_POINT_LISTED_FLATS",
    "closure",
    "rank_of",
    "restrict",
    "contract",
    "dual",
    "mobius",
]


class Matroid:
    """Immutable matroid given by its lattice of flats.

    ``flats_by_rank[k]`` is a sorted tuple of the rank-k flats (bitmasks).
    ``labels[i]`` records which element of some parent matroid the element
    ``i + 1`` came from; minors use it to transport weights.
    """

    __slots__ = ("n", "rank", "flats_by_rank", "labels", "_rank_of_flat", "_closure_cache")

    def __init__(self, n: int, flats_by_rank: Sequence[Sequence[int]], labels: Sequence[int] | None = None):
        # trusted constructor; use from_flats() for untrusted input
        self.n = n
        self.flats_by_rank = tuple(tuple(sorted(layer, key=ss.sort_key)) for layer in flats_by_rank)
        self.rank = len(self.flats_by_rank) - 1
        self.labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        self._rank_of_flat = {F: k for k, layer in enumerate(self.flats_by_rank) for F in layer}
        self._closure_cache = {}

    # -- basic queries -------------------------------------------------
    @property
    def ground(self) -> int:
        return ss.full(self.n)

    @property
    def flats(self) -> tuple[int, ...]:
        return tuple(F for layer in self.flats_by_rank for F in layer)

    @property
    def proper_flats(self) -> tuple[int, ...]:
        return tuple(F for layer in self.flats_by_rank[1:-1] for F in layer)

    @property
    def loops(self) -> int:
        return self.flats_by_rank[0][0]

    def is_flat(self, S: int) -> bool:
        return S in self._rank_of_flat

    def flat_rank(self, F: int) -> int:
        return self._rank_of_flat[F]

    def closure(self, S: int) -> int:
        try:
            return self._closure_cache[S]
        except KeyError:
            pass
        for layer in self.flats_by_rank:
            for F in layer:
                if S & ~F == 0:
                    self._closure_cache[S] = F
                    return F
        raise InvalidParameters(f"{ss.fmt(S)} is not a subset of the ground set")

    def rank_of(self, S: int) -> int:
        return self._rank_of_flat[self.closure(S)]

    def is_independent(self, S: int) -> bool:
        return self.rank_of(S) == ss.card(S)

    def is_spanning(self, S: int) -> bool:
        return self.rank_of(S) == self.rank

    def covers(self, F: int) -> tuple[int, ...]:
        k = self._rank_of_flat[F]
        if k == self.rank:
            return ()
        return tuple(G for G in self.flats_by_rank[k + 1] if F & ~G == 0)

    def bases(self) -> list[int]:
        out = []
        for combo in itertools.combinations(range(self.n), self.rank):
            S = sum(1 << i for i in combo)
            if self.rank_of(S) == self.rank:
                out.append(S)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.flats_by_rank == other.flats_by_rank
        )

    def __hash__(self):
        return hash((self.n, self.flats_by_rank))

    def __repr__(self):
        counts = "+".join(str(len(layer)) for layer in self.flats_by_rank)
        return f"Matroid(n={self.n}, rank={self.rank}, flats={counts})"

    def summary(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "flats_per_rank": [len(layer) for layer in self.flats_by_rank],
            "proper_flats": len(self.proper_flats),
            "mobius": mobius(self),
        }


# -- construction and validation ---------------------------------------

def _ranks_by_longest_chain(flats: list[int]) -> dict[int, int]:
    rank = {}
    for F in sorted(flats, key=ss.card):
        below = [rank[G] for G in rank if G != F and G & ~F == 0]
        rank[F] = 1 + max(below) if below else 0
    return rank


def from_flats(n: int, flats: Iterable[Iterable[int] | int], *, allow_loops: bool = False,
               labels: Sequence[int] | None = None) -> Matroid:
    """Validate a family of flats and return the matroid it defines.

    Flats may be given as bitmasks or as collections of 1-based elements.
    """
    ss.check_n(n)
    fam = set()
    for F in flats:
        bits = F if isinstance(F, int) else ss.subset(F, n)
        if bits & ~ss.full(n):
            raise InvalidParameters(f"flat {ss.fmt(bits)} is not a subset of [{n}]")
        fam.add(bits)
    if not fam:
        raise InvalidParameters("the list of flats is empty")
    E = ss.full(n)
    if E not in fam:
        raise NotALattice(f"the ground set [{n}] is not listed as a flat")
    flist = sorted(fam, key=ss.sort_key)
    for a, b in itertools.combinations(flist, 2):
        if (a & b) not in fam:
            raise NotALattice(
                f"intersection of {ss.fmt(a)} and {ss.fmt(b)} is {ss.fmt(a & b)}, which is not a flat"
            )
    bottom = E
    for F in flist:
        bottom &= F
    if bottom and not allow_loops:
        raise Loops(f"the smallest flat {ss.fmt(bottom)} is nonempty (elements are loops)")
    rank = _ranks_by_longest_chain(flist)
    for F in flist:
        if F == E:
            continue
        above = [G for G in flist if G != F and F & ~G == 0]
        covers = [G for G in above if not any(H != G and F & ~H == 0 and H & ~G == 0 and H != F for H in above)]
        seen = 0
        for G in covers:
            new = G & ~F
            if new & seen:
                raise PartitionAxiomFails(
                    f"covers of {ss.fmt(F)} overlap outside it (at {ss.fmt(new & seen)})"
                )
            seen |= new
            if rank[G] != rank[F] + 1:
                raise PartitionAxiomFails(f"cover {ss.fmt(G)} of {ss.fmt(F)} skips a rank")
        if seen != E & ~F:
            raise PartitionAxiomFails(
                f"covers of {ss.fmt(F)} miss elements {ss.fmt(E & ~F & ~seen)}"
            )
    r = rank[E]
    layers = [[] for _ in range(r + 1)]
    for F in flist:
        layers[rank[F]].append(F)
    return Matroid(n, layers, labels)


def _flats_from_rank(n: int, rank_fn: Callable[[int], int]) -> list[list[int]]:
    def cl(S):
        r = rank_fn(S)
        out = S
        for e in range(n):
            b = 1 << e
            if not S & b and rank_fn(S | b) == r:
                out |= b
        return out

    E = ss.full(n)
    layer = {cl(0)}
    layers = [sorted(layer)]
    while layer != {E}:
        nxt = set()
        for F in layer:
            for e in range(n):
                if not F >> e & 1:
                    nxt.add(cl(F | 1 << e))
        layer = nxt
        layers.append(sorted(layer))
    return layers


def from_rank_function(n: int, rank_fn: Callable[[int], int], *, allow_loops: bool = False) -> Matroid:
    ss.check_n(n)
    layers = _flats_from_rank(n, rank_fn)
    if layers[0][0] and not allow_loops:
        raise Loops(f"elements {ss.fmt(layers[0][0])} are loops")
    return from_flats(n, [F for layer in layers for F in layer], allow_loops=allow_loops)


def from_bases(n: int, bases: Iterable[Iterable[int] | int], *, allow_loops: bool = False) -> Matroid:
    ss.check_n(n)
    blist = []
    for B in bases:
        bits = B if isinstance(B, int) else ss.subset(B, n)
        if bits & ~ss.full(n):
            raise InvalidParameters(f"basis {ss.fmt(bits)} is not a subset of [{n}]")
        blist.append(bits)
    blist = sorted(set(blist))
    if not blist:
        raise InvalidParameters("the list of bases is empty")
    sizes = {ss.card(B) for B in blist}
    if len(sizes) != 1:
        raise ExchangeAxiomFails(f"bases have different cardinalities {sorted(sizes)}")
    bset = set(blist)
    for B1 in blist:
        for B2 in blist:
            for x in ss.elements(B1 & ~B2):
                xb = 1 << (x - 1)
                if not any((B1 & ~xb) | (1 << (y - 1)) in bset for y in ss.elements(B2 & ~B1)):
                    raise ExchangeAxiomFails(
                        f"no exchange for {x} from {ss.fmt(B1)} into {ss.fmt(B2)}"
                    )
    used = 0
    for B in blist:
        used |= B
    if used != ss.full(n) and not allow_loops:
        raise Loops(f"elements {ss.fmt(ss.full(n) & ~used)} lie in no basis")

    def rank_fn(S):
        return max(ss.card(S & B) for B in blist)

    return from_rank_function(n, rank_fn, allow_loops=allow_loops)


# -- standard families ---------------------------------------------------

def uniform(r: int, n: int) -> Matroid:
    ss.check_n(n)
    if not (isinstance(r, int) and 1 <= r <= n):
        raise InvalidParameters(f"uniform matroid needs 1 <= r <= n, got r={r}, n={n}")
    layers = []
    for k in range(r):
        layers.append([sum(1 << i for i in c) for c in itertools.combinations(range(n), k)])
    layers.append([ss.full(n)])
    return Matroid(n, layers)


def boolean(n: int) -> Matroid:
    return uniform(n, n)


FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def rank3_from_lines(n: int, lines: Iterable[Iterable[int]]) -> Matroid:
    """Simple rank-3 matroid with the given lines; missing pairs become 2-point lines."""
    ss.check_n(n)
    lset = [ss.subset(L, n) for L in lines]
    covered = set()
    for L in lset:
        for a, b in itertools.combinations(ss.elements(L), 2):
            if (a, b) in covered:
                raise NotALattice(f"pair {{{a},{b}}} lies on two lines")
            covered.add((a, b))
    for a, b in itertools.combinations(range(1, n + 1), 2):
        if (a, b) not in covered:
            lset.append(ss.subset((a, b)))
    atoms = [1 << i for i in range(n)]
    return from_flats(n, [0, *atoms, *lset, ss.full(n)])


def fano() -> Matroid:
    return rank3_from_lines(7, FANO_LINES)


# proper flats exactly as listed for the seven-element example with a
# disconnected positive part; the four 2-point lines {1,5},{2,3},{3,7},{5,6}
# are not in the list, so it does not satisfy the partition axiom on its own
SEVEN_POINT_LISTED_FLATS = (
    (1,), (2,), (3,), (4,), (5,), (6,), (7,),
    (1, 2), (6, 7), (1, 3, 6), (1, 4, 7), (2, 4, 6), (2, 5, 7), (3, 4, 5),
)


def seven_point_example() -> Matroid:
    """Rank-3 matroid on [7] generated by the listed lines (completed to a geometric lattice)."""
    lines = [L for L in SEVEN_POINT_LISTED_FLATS if len(L) >= 3]
    M = rank3_from_lines(7, lines)
    assert all(M.is_flat(ss.subset(F)) for F in SEVEN_POINT_LISTED_FLATS)
    return M


def graphic(edges: Sequence[Sequence]) -> Matroid:
    """Cycle matroid of a loopless multigraph; element i is the i-th edge."""
    edges = [tuple(e) for e in edges]
    m = ss.check_n(len(edges))
    for e in edges:
        if len(e) != 2:
            raise InvalidParameters(f"edge {e!r} does not have two endpoints")
        if e[0] == e[1]:
            raise InvalidParameters(f"edge {e!r} is a loop")
    if m == 0:
        raise InvalidParameters("graph has no edges")
    verts = sorted({v for e in edges for v in e}, key=repr)
    vidx = {v: i for i, v in enumerate(verts)}
    ends = [(vidx[a], vidx[b]) for a, b in edges]

    def rank_fn(S):
        parent = list(range(len(verts)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in ss.elements(S):
            a, b = ends[i - 1]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                r += 1
        return r

    return from_rank_function(m, rank_fn)


def complete_graph_edges(k: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, k + 1), 2))


# -- operations ------------------------------------------------------------

def closure(M: Matroid, S: int) -> int:
    return M.closure(S)


def rank_of(M: Matroid, S: int) -> int:
    return M.rank_of(S)


def _compress(bits: int, positions: dict[int, int]) -> int:
    out = 0
    for e in ss.elements(bits):
        if e in positions:
            out |= 1 << positions[e]
    return out


def restrict(M: Matroid, S: int) -> Matroid:
    """M|S on [|S|]; ``labels`` maps new elements back to M's labels."""
    elems = ss.elements(S & M.ground)
    pos = {e: i for i, e in enumerate(elems)}
    flats = {_compress(F & S, pos) for F in M.flats}
    labels = [M.labels[e - 1] for e in elems]
    return from_flats(len(elems), flats, allow_loops=bool(M.loops & S), labels=labels)


def contract(M: Matroid, S: int) -> Matroid:
    """M/S on [n - |S|] for a flat S (contracting a non-flat would create loops)."""
    if not M.is_flat(S):
        raise Loops(
            f"contracting the non-flat {ss.fmt(S)} makes {ss.fmt(M.closure(S) & ~S)} loops"
        )
    rest = M.ground & ~S
    elems = ss.elements(rest)
    pos = {e: i for i, e in enumerate(elems)}
    flats = {_compress(F & ~S, pos) for F in M.flats if S & ~F == 0}
    labels = [M.labels[e - 1] for e in elems]
    return from_flats(len(elems), flats, labels=labels)


def dual(M: Matroid) -> Matroid:
    """Dual matroid; may have loops (exactly the coloops of M)."""
    E = M.ground
    dual_bases = [E & ~B for B in M.bases()]
    if M.n == 0:
        return M
    return from_bases(M.n, dual_bases, allow_loops=True)


def mobius(M: Matroid) -> int:
    """Moebius number mu(bottom, top) of the lattice of flats."""
    mu = {}
    for layer in M.flats_by_rank:
        for F in layer:
            below = [G for G in mu if G & ~F == 0]
            mu[F] = 1 if not below else -sum(mu[G] for G in below)
    return mu[M.ground]
