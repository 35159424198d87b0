"""p-groups of Bergman fans and cellular (p,q)-chain complexes on
fan-local models (link, halflink, ball).

Coordinates on the p-th exterior power of Z^D use the lexicographic basis
e_I, I a sorted p-subset of range(D); the coefficient of v_1 ^ ... ^ v_p
on e_I is the p x p minor on the columns I.

A chain-cell C (a chain of proper flats, i.e. a cone of the fan) carries
the p-group generated by the maximal cones containing C; the empty chain
(the cone point) carries the p-group of the whole fan.  Transport maps are
inclusions of these lattices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import subsets as ss
from .bergman import BergmanFan, Halfspace, bergman_fan, positive_cones, standard_circuit
from .complex import OrderComplex
from .errors import CertificateError, InvalidParameters
from .homology import ChainComplexZ, Homology
from .linalg import (
    coordinates,
    determinant,
    hermite_normal_form,
    lattice_index,
    rank,
    saturation,
)
from .matroid import Matroid, fano, uniform
from .poset import Poset, filtered, proper_lattice


@lru_cache(maxsize=None)
def wedge_basis(D: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(D), p))


def wedge(vectors: Sequence[Sequence[int]], D: int) -> tuple[int, ...]:
    p = len(vectors)
    if p == 0:
        return (1,)
    return tuple(determinant([[v[j] for j in I] for v in vectors]) for I in wedge_basis(D, p))


class PLattice:
    """Sublattice of the p-th exterior power of Z^D in Hermite normal form.

    With ring "Q" the stored lattice is the saturation, which represents
    the rational span canonically.
    """

    __slots__ = ("p", "D", "basis", "ring", "_key")

    def __init__(self, p: int, D: int, basis, ring: str = "Z"):
        self.p = p
        self.D = D
        self.basis = tuple(tuple(r) for r in basis)
        self.ring = ring
        self._key = (p, D, ring, self.basis)

    @classmethod
    def generated_by(cls, p: int, D: int, gens, ring: str = "Z") -> "PLattice":
        N = len(wedge_basis(D, p))
        gens = [g for g in gens if any(g)]
        if not gens:
            return cls(p, D, [], ring)
        if ring == "Q":
            return cls(p, D, saturation(gens, N), ring)
        hf = hermite_normal_form(gens, N, with_certificate=False)
        return cls(p, D, hf.basis, ring)

    @property
    def ambient_rank(self) -> int:
        return len(wedge_basis(self.D, self.p))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full(self) -> bool:
        N = self.ambient_rank
        return self.rank == N and all(self.basis[i][i] == 1 for i in range(N))

    def __eq__(self, other):
        return isinstance(other, PLattice) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PLattice(p={self.p}, D={self.D}, rank={self.rank}, ring={self.ring})"

    def contains(self, other: "PLattice") -> bool:
        if other is self or other.rank == 0 or (self.is_full and other.D == self.D and other.p == self.p):
            return True
        return all(coordinates(self.basis, v) is not None for v in other.basis)

    def transport(self, other: "PLattice"):
        """Coordinates of self's basis in other's basis, or None if self is
        not contained in other."""
        if self == other:
            return [[int(i == j) for j in range(self.rank)] for i in range(self.rank)]
        out = []
        for v in self.basis:
            co = coordinates(other.basis, v)
            if co is None:
                return None
            out.append(co)
        return out

    def index_of(self, sub: "PLattice"):
        """[self : sub]; None when the ranks differ (infinite index)."""
        return lattice_index(self.basis, sub.basis)

    def sum(self, other: "PLattice") -> "PLattice":
        if self.is_full or other.contains(self):
            return other if not self.is_full else self
        if self.contains(other):
            return self
        return PLattice.generated_by(self.p, self.D, list(self.basis) + list(other.basis), self.ring)

    def to_dict(self) -> dict:
        return {"p": self.p, "ambient_dim": self.D, "ring": self.ring, "rank": self.rank,
                "basis": [list(r) for r in self.basis]}


def full_lattice(p: int, D: int, ring: str = "Z") -> PLattice:
    N = len(wedge_basis(D, p))
    return PLattice(p, D, [[int(i == j) for j in range(N)] for i in range(N)], ring)


class FanData:
    """Per-fan caches: integral bases of cone spans and p-groups of cones and stars."""

    def __init__(self, B: BergmanFan):
        self.B = B
        self.D = B.ambient_dim
        self._span = {}
        self._unimod = {}
        self._cone = {}
        self._star = {}
        self._children = None
        self._chains = None
        self._intern: dict = {}

    def intern(self, L: PLattice) -> PLattice:
        """Canonical object for L, so that equal lattices are identical."""
        return self._intern.setdefault(L._key, L)

    def chains(self) -> list[tuple]:
        """All chains of proper flats (cones of the fan), bottom first."""
        if self._chains is None:
            D = self.B.complex
            self._chains = [D.labels(m) for m in D.faces()]
        return self._chains

    def span_basis(self, chain) -> list[list[int]]:
        """Basis of lin(cone) intersected with Z^D."""
        b = self._span.get(chain)
        if b is None:
            b = saturation([list(self.B.rays[F]) for F in chain], self.D) if chain else []
            self._span[chain] = b
        return b

    def _unimodular(self, chain) -> bool:
        """Does the integral basis of the cone span generate all of Z^D?"""
        u = self._unimod.get(chain)
        if u is None:
            basis = self.span_basis(chain)
            u = len(basis) == self.D and abs(determinant(basis)) == 1
            self._unimod[chain] = u
        return u

    def cone_lattice(self, chain, p: int, ring: str = "Z") -> PLattice:
        key = (chain, p, ring)
        L = self._cone.get(key)
        if L is None:
            basis = self.span_basis(chain)
            if ring == "Z" and p <= self.D and self._unimodular(chain):
                L = self.intern(full_lattice(p, self.D, ring))
            else:
                gens = [wedge(sub, self.D) for sub in itertools.combinations(basis, p)]
                L = PLattice.generated_by(p, self.D, gens, ring)
            L = self.intern(L)
            self._cone[key] = L
        return L

    def children(self):
        """chain -> one-step refinements (chains of the full fan)."""
        if self._children is None:
            kids = {ch: [] for ch in self.chains()}
            for ch in kids:
                if not ch:
                    continue
                for i in range(len(ch)):
                    parent = ch[:i] + ch[i + 1:]
                    kids[parent].append(ch)
            self._children = kids
        return self._children

    def star_lattice(self, chain, p: int, ring: str = "Z") -> PLattice:
        """p-group of the star of the cone of ``chain``."""
        key = (p, ring)
        memo = self._star.setdefault(key, {})
        if chain in memo:
            return memo[chain]
        kids = self.children()
        # fill bottom-up from the longest chains
        if not memo:
            order = sorted(kids, key=len, reverse=True)
            for ch in order:
                ks = kids[ch]
                if not ks:
                    memo[ch] = self.cone_lattice(ch, p, ring)
                    continue
                acc = None
                for k in ks:
                    L = memo[k]
                    if acc is None:
                        acc = L
                    elif acc is not L:
                        acc = self.intern(acc.sum(L))
                    if acc.is_full:
                        break
                memo[ch] = acc
        return memo[chain]


_FAN_CACHE: dict = {}


def clear_caches():
    _FAN_CACHE.clear()
    _WHOLE_RANK.clear()


def fan_data(M: Matroid) -> FanData:
    key = (M.n, M.flats_by_rank)
    fd = _FAN_CACHE.get(key)
    if fd is None:
        if len(_FAN_CACHE) > 64:
            _FAN_CACHE.clear()
        fd = FanData(bergman_fan(M))
        _FAN_CACHE[key] = fd
    return fd


def _maximal_among(chains) -> list[tuple]:
    sets = [frozenset(c) for c in chains]
    out = []
    for c, s in zip(chains, sets):
        if not any(s < t for t in sets):
            out.append(c)
    return out


def p_group(B: BergmanFan | Matroid, cones=None, p: int = 1, ring: str = "Z") -> PLattice:
    """p-group generated by wedges of vectors in a common cone span."""
    if isinstance(B, Matroid):
        B = bergman_fan(B)
    if ring not in ("Z", "Q"):
        raise InvalidParameters(f"ring must be Z or Q, got {ring!r}")
    D = B.ambient_dim
    if not 0 <= p <= D:
        raise InvalidParameters(f"p must lie in [0, {D}], got {p}")
    fd = fan_data(B.M) if B.circuit == standard_circuit(B.M.n) else FanData(B)
    chains = B.maximal_cones() if cones is None else _maximal_among([tuple(c) for c in cones])
    acc = PLattice(p, D, [], ring)
    for ch in chains:
        acc = acc.sum(fd.cone_lattice(tuple(ch), p, ring)) if acc.rank else fd.cone_lattice(tuple(ch), p, ring)
        if acc.is_full:
            break
    return acc


@dataclass
class PComparison:
    rank_equal: bool
    index: int | None          # None means infinite
    rank_positive: int
    rank_whole: int
    positive: PLattice | None = None
    whole: PLattice | None = None

    def to_dict(self) -> dict:
        return {"rank_equal": self.rank_equal,
                "index": "infinite" if self.index is None else self.index,
                "rank_positive": self.rank_positive, "rank_whole": self.rank_whole}


class RationalSpan:
    """Incrementally grown Q-span of integer vectors, kept as primitive
    integer echelon rows (fraction-free)."""

    def __init__(self):
        self.rows: dict[int, list[int]] = {}   # leading column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, v) -> bool:
        """Add v; True if it enlarged the span."""
        v = list(v)
        for j in sorted(self.rows):
            if v[j]:
                row = self.rows[j]
                a, b = row[j], v[j]
                v = [a * x - b * y for x, y in zip(v, row)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            return False
        g = 0
        for x in v:
            g = gcd(g, x)
        self.rows[lead] = [x // g for x in v]
        return True


_WHOLE_RANK: dict = {}


def rational_p_rank(B: BergmanFan, cones, p: int, stop_at: int | None = None) -> int:
    """dim over Q of the span of wedges of p rays of a common cone."""
    D = B.ambient_dim
    cap = len(wedge_basis(D, p))
    stop_at = cap if stop_at is None else min(stop_at, cap)
    span = RationalSpan()
    seen = set()
    for ch in cones:
        for sub in itertools.combinations(ch, p):
            if sub in seen:
                continue
            seen.add(sub)
            span.add(wedge([B.rays[F] for F in sub], D))
            if span.rank >= stop_at:
                return span.rank
    return span.rank


def whole_rational_p_rank(B: BergmanFan, p: int) -> int:
    key = (B.M.n, B.M.flats_by_rank, B.circuit, p)
    r = _WHOLE_RANK.get(key)
    if r is None:
        r = rational_p_rank(B, B.maximal_cones(), p)
        _WHOLE_RANK[key] = r
    return r


def halfspace_p_comparison(M: Matroid, H: Halfspace, p: int, ring: str = "Z") -> PComparison:
    """Compare the p-group of the cones meeting H+ with that of the fan.

    Over Q only dimensions matter (the rays of a cone are a rational basis
    of its span), so the ranks are computed directly.
    """
    H.require_generic()
    if ring not in ("Z", "Q"):
        raise InvalidParameters(f"ring must be Z or Q, got {ring!r}")
    B = bergman_fan(M, H.circuit)
    if ring == "Q":
        whole = whole_rational_p_rank(B, p)
        pos = rational_p_rank(B, positive_cones(B, H), p, stop_at=whole)
        return PComparison(pos == whole, 1 if pos == whole else None, pos, whole)
    whole = p_group(B, None, p, ring)
    pos = p_group(B, positive_cones(B, H), p, ring)
    if not whole.contains(pos):
        raise CertificateError("p-group of a subfan is not contained in that of the fan")
    if pos.rank != whole.rank:
        return PComparison(False, None, pos.rank, whole.rank, pos, whole)
    return PComparison(True, whole.index_of(pos), pos.rank, whole.rank, pos, whole)


# -- (p,q) complexes ----------------------------------------------------------

@dataclass
class PQComplex:
    """Cells with coefficient lattices and signed incidences.

    ``cells`` lists (key, degree); ``faces[key]`` lists (face key, sign).
    """

    M: Matroid
    region: str
    p: int
    ring: str
    cells: list
    degree: dict
    coeff: dict
    faces: dict
    stats: dict = field(default_factory=dict)
    _transports: dict = field(default_factory=dict)

    def is_constant(self) -> bool:
        vals = set(self.coeff.values())
        return len(vals) <= 1

    def _transport(self, c, f):
        a, b = self.coeff[c], self.coeff[f]
        # coefficient lattices are interned per fan, so ids are stable keys
        key = (id(a), id(b))
        hit = self._transports.get(key)
        if hit is None:
            hit = (a, b, a.transport(b))
            self._transports[key] = hit
        T = hit[2]
        if T is None:
            raise CertificateError(f"coefficient of {c!r} is not contained in that of its face {f!r}")
        return T

    def check_inclusions(self) -> bool:
        if self.is_constant():
            return True
        for c in self.cells:
            for f, _ in self.faces[c]:
                self._transport(c, f)
        return True

    def chain_complex(self, scalar: bool = False, drop=frozenset(), max_degree=None) -> ChainComplexZ:
        """Total integral chain complex; ``scalar`` replaces every
        coefficient by Z (used when the system is constant)."""
        keep = [c for c in self.cells if c not in drop and (max_degree is None or self.degree[c] <= max_degree)]
        gens: dict[int, list] = {}
        gidx: dict = {}
        for c in keep:
            k = 1 if scalar else self.coeff[c].rank
            q = self.degree[c]
            lst = gens.setdefault(q, [])
            for a in range(k):
                gidx[(c, a)] = len(lst)
                lst.append((c, a))
        boundary: dict[int, list] = {}
        for q, lst in gens.items():
            cols = []
            for c, a in lst:
                col: dict[int, int] = {}
                if scalar:
                    for f, s in self.faces[c]:
                        i = gidx.get((f, 0))
                        if i is not None:
                            col[i] = col.get(i, 0) + s
                else:
                    for f, s in self.faces[c]:
                        if f in drop or not self.coeff[f].rank:
                            continue
                        co = self._transport(c, f)[a]
                        for b, x in enumerate(co):
                            if x:
                                i = gidx.get((f, b))
                                if i is not None:
                                    col[i] = col.get(i, 0) + s * x
                cols.append({i: x for i, x in col.items() if x})
            boundary[q] = cols
        return ChainComplexZ(gens, boundary)

    def homology(self, degrees=None, relative_to=frozenset(), max_degree=None) -> Homology:
        if degrees is not None and max_degree is None:
            max_degree = max(degrees) + 1
        present = {self.degree[c] for c in self.cells if c not in relative_to}
        degs = sorted(present) if degrees is None else sorted(degrees)
        vals = {self.coeff[c] for c in self.cells if c not in relative_to}
        if len(vals) == 1:
            # constant coefficients: chains are (scalar chains) (x) Z^k
            k = next(iter(vals)).rank
            cc = self.chain_complex(scalar=True, drop=relative_to, max_degree=max_degree)
            H = cc.homology(ring=self.ring, degrees=degs)
            self.stats["constant_coefficients"] = True
            self.stats["generators"] = sum(len(v) for v in cc.cells.values()) * k
            return Homology({q: H[q].scale(k) for q in degs})
        cc = self.chain_complex(drop=relative_to, max_degree=max_degree)
        self.stats["constant_coefficients"] = False
        self.stats["generators"] = sum(len(v) for v in cc.cells.values())
        H = cc.homology(ring=self.ring, degrees=degs)
        return Homology({q: H[q] for q in degs})


def _region_chains(fd: FanData, M: Matroid, region: str, H: Halfspace | None, omega, t):
    if region == "link" or region == "ball":
        return fd.chains() if M.rank >= 2 else [()]
    if region != "halflink":
        raise InvalidParameters(f"unknown region {region!r}")
    L = proper_lattice(M) if M.rank >= 2 else Poset(M.n, [])
    if H is not None:
        H.require_generic()
        w = H.weight
        t = Fraction(0) if t is None else ss.to_fraction(t)
    else:
        w = omega
        t = ss.to_fraction(t if t is not None else 0)
    P = filtered(L, w, t) if len(L) else L
    D = OrderComplex(P)
    return [D.labels(m) for m in D.faces()]


def pq_complex(M: Matroid, region: str, p: int, ring: str = "Z", H: Halfspace | None = None,
               omega=None, t=None, check: bool = True) -> PQComplex:
    """(p,q)-cells on a fan-local model.

    link: chains of proper flats, plus the empty chain in degree -1;
    halflink: the same for the flats above t (t=0 for a halfspace);
    ball: the link chains C in degree |C|-1 together with the cone cells
    v*C (C possibly empty) in degree |C|.
    """
    if ring not in ("Z", "Q"):
        raise InvalidParameters(f"ring must be Z or Q, got {ring!r}")
    fd = fan_data(M)
    if not 0 <= p <= fd.D:
        raise InvalidParameters(f"p must lie in [0, {fd.D}], got {p}")
    if region == "halflink" and H is None and omega is None:
        raise InvalidParameters("halflink needs a halfspace or a weight")
    if omega is not None and not isinstance(omega, ss.Weight):
        omega = ss.Weight(omega)
    chains = _region_chains(fd, M, region, H, omega, t)
    cells, degree, coeff, faces = [], {}, {}, {}
    for ch in chains:
        key = ("c", ch)
        if region == "ball" and not ch:
            continue
        cells.append(key)
        degree[key] = len(ch) - 1
        coeff[key] = fd.star_lattice(ch, p, ring)
        fs = []
        for i in range(len(ch)):
            f = ch[:i] + ch[i + 1:]
            if region == "ball" and not f:
                continue
            fs.append((("c", f), (-1) ** i))
        faces[key] = fs
    if region == "ball":
        for ch in chains:
            key = ("v", ch)
            cells.append(key)
            degree[key] = len(ch)
            coeff[key] = fd.star_lattice(ch, p, ring)
            # boundary of v*C is C - v*(augmented boundary of C)
            fs = [(("c", ch), 1)] if ch else []
            for i in range(len(ch)):
                f = ch[:i] + ch[i + 1:]
                fs.append((("v", f), -((-1) ** i)))
            faces[key] = fs
    K = PQComplex(M, region, p, ring, cells, degree, coeff, faces)
    if check:
        K.check_inclusions()
    return K


def pq_homology(K: PQComplex, degrees=None) -> Homology:
    return K.homology(degrees=degrees)


def pq_relative_homology(K: PQComplex, sub_cells, degrees=None) -> Homology:
    return K.homology(degrees=degrees, relative_to=frozenset(sub_cells))


def link_cells_of_ball(K: PQComplex) -> list:
    return [c for c in K.cells if c[0] == "c"]


@dataclass
class ConeIsoResult:
    passed: bool
    p: int
    link: Homology
    relative: Homology

    def to_dict(self) -> dict:
        return {"verdict": "PASS" if self.passed else "FAIL", "p": self.p,
                "link": self.link.to_dict(), "ball_rel_link": self.relative.to_dict()}


def cone_iso_check(M: Matroid, p: int, ring: str = "Z") -> ConeIsoResult:
    """Compare H_{q-1}(link) with H_q(ball, link) for every q."""
    link = pq_complex(M, "link", p, ring)
    ball = pq_complex(M, "ball", p, ring)
    Hl = link.homology()
    Hr = pq_relative_homology(ball, link_cells_of_ball(ball))
    ok = Hl.shifted(1).nonzero() == Hr.nonzero()
    return ConeIsoResult(ok, p, Hl, Hr)


# -- worked examples -----------------------------------------------------------

FANO_OMEGA = (4, 4, 4, -3, -3, -3, -3)
FANO_THETA = (0, 0, 0, 1, 1, 1, 1)


def parity_functional(theta: Sequence[int], D: int):
    """Functional x -> sum theta_i x_i (i < n) mod 2 on Z^D; on e_S (standard
    circuit) it equals theta . S mod 2 when theta_n = sum of the others mod 2."""
    return lambda x: sum(a * b for a, b in zip(theta[:D], x)) % 2


def torsion_witness_fano() -> dict:
    M = fano()
    H = Halfspace.from_weight(FANO_OMEGA)
    H.require_generic()
    B = bergman_fan(M)
    pos_flats = [F for F in M.proper_flats if H.value(F) > 0]
    cones = positive_cones(B, H)
    G = sorted({F for ch in cones for F in ch}, key=ss.sort_key)
    theta = ss.Weight(FANO_THETA)
    f = parity_functional(FANO_THETA, B.ambient_dim)
    whole = p_group(B, None, 1, "Z")
    pos = p_group(B, cones, 1, "Z")
    gens_even = all(f(v) == 0 for v in pos.basis)
    ray_values = {ss.fmt(S): int(theta.dot(S)) % 2 for S in G}
    consistent = all(f(B.rays[S]) == int(theta.dot(S)) % 2 for S in G)
    idx = whole.index_of(pos)
    return {
        "omega": list(FANO_OMEGA),
        "positive_flats": [ss.fmt(F) for F in pos_flats],
        "generating_flats": [ss.fmt(F) for F in G],
        "theta": list(FANO_THETA),
        "theta_mod2_on_generating_flats": ray_values,
        "theta_even_on_all_generating_flats": all(v == 0 for v in ray_values.values()),
        "theta_on_lattice_basis_even": gens_even,
        "functional_matches_theta_on_rays": consistent,
        "theta_on_element_4": int(theta.dot(ss.subset([4]))),
        "whole_p_group_full": whole.is_full,
        "whole_p_group_rank": whole.rank,
        "index": idx,
    }


U34_OMEGA = (1, 1, 1, -3)


def u34_linear_system():
    """The cyclic system b_i + a_(i+1) + b_(i+1) = 0, a_(i+1) - b_(i+1) = 0,
    a_i = 1 (i = 1, 2, 3, indices mod 3) in the unknowns a_1..a_3, b_1..b_3."""
    rows, rhs = [], []
    a = lambda i: (i - 1) % 3
    b = lambda i: 3 + (i - 1) % 3
    for i in (1, 2, 3):
        r = [0] * 6
        r[b(i)] += 1
        r[a(i + 1)] += 1
        r[b(i + 1)] += 1
        rows.append(r)
        rhs.append(0)
        r = [0] * 6
        r[a(i + 1)] += 1
        r[b(i + 1)] -= 1
        rows.append(r)
        rhs.append(0)
        r = [0] * 6
        r[a(i)] = 1
        rows.append(r)
        rhs.append(1)
    return rows, rhs


def system_consistent(rows, rhs) -> bool:
    aug = [list(r) + [c] for r, c in zip(rows, rhs)]
    return rank(rows) == rank(aug)


def u34_witness() -> dict:
    """Halflink of the fan of U(3,4) on the side containing e1, e2, e3, and
    the (1,0)-chain c = sum_i (e_(i-1) - e_i) at the vertex {i}."""
    M = uniform(3, 4)
    H = Halfspace.from_weight(U34_OMEGA)
    H.require_generic()
    K = pq_complex(M, "halflink", 1, "Z", H=H)
    circ = H.circuit
    e = {i: circ.vectors[i - 1] for i in range(1, 5)}
    cc = K.chain_complex()
    gidx = {g: k for k, g in enumerate(cc.cells[0])}
    c_vec = [0] * len(cc.cells[0])
    chain_terms = {}
    for i in (1, 2, 3):
        prev = 3 if i == 1 else i - 1
        x = [u - v for u, v in zip(e[prev], e[i])]
        key = ("c", (ss.subset([i]),))
        co = coordinates(K.coeff[key].basis, x)
        if co is None:
            raise CertificateError("coefficient not in the vertex p-group")
        chain_terms[ss.fmt(ss.subset([i]))] = x
        for bidx, val in enumerate(co):
            c_vec[gidx[(key, bidx)]] += val
    # cycle condition in the augmented complex
    d0 = cc.boundary[0]
    image = {}
    for j, col in enumerate(d0):
        for r, v in col.items():
            image[r] = image.get(r, 0) + v * c_vec[j]
    is_cycle = not any(image.values())
    # boundary test: is c in the integer column span of the degree-1 boundary?
    n0 = len(cc.cells[0])
    cols = [[col.get(r, 0) for r in range(n0)] for col in cc.boundary.get(1, [])]
    cols = [c for c in cols if any(c)]
    if cols:
        hf = hermite_normal_form(cols, n0)
        hf.verify()
        sol = coordinates(hf.basis, c_vec)
    else:
        sol = None if any(c_vec) else []
    is_boundary_Z = sol is not None
    is_boundary_Q = rank(cols + [c_vec]) == rank(cols) if cols else not any(c_vec)
    rows, rhs = u34_linear_system()
    Hq = K.homology(degrees=[-1, 0, 1])
    return {
        "omega": list(U34_OMEGA),
        "positive_flats": sorted((ss.fmt(ch[0]) for ch in (c[1] for c in K.cells) if len(ch) == 1),
                                 key=lambda s: (len(s), s)),
        "chain": chain_terms,
        "system_consistent": system_consistent(rows, rhs),
        "chain_is_cycle": is_cycle,
        "chain_is_boundary_Z": is_boundary_Z,
        "chain_is_boundary_Q": is_boundary_Q,
        "class_nonzero": is_cycle and not is_boundary_Z,
        "halflink_homology_p1": Hq.to_dict(),
        # the chain lives in the 2-dimensional fan as a (1,1)-chain
        "fan_dimension": M.rank - 1,
        "fan_chain_pq": [1, 1],
        "outside_p_plus_q_lt_n": not (1 + 1 < M.rank - 1),
        "within_q_lt_n": 1 < M.rank - 1,
    }
