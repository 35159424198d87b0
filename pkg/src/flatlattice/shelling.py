"""Lexicographic shellings of filtered Boolean lattices and a generic
shelling-order checker."""

from __future__ import annotations

from dataclasses import dataclass

from . import subsets as ss
from .complex import OrderComplex, SimplicialComplex
from .errors import NonGenericWeight, NotAPermutation, NotPure, TooLarge, TOutOfRange
from .poset import Poset, filtered, t_upper_bound

BRUTE_FORCE_MAX_FACETS = 10


@dataclass
class ShellingOrder:
    complex: SimplicialComplex
    facets: list[int]               # vertex masks of the complex, in order
    words: list[tuple] | None = None

    def facet_labels(self) -> list[tuple]:
        return [self.complex.labels(f) for f in self.facets]


@dataclass
class ShellingVerdict:
    passed: bool
    index: int | None = None        # 1-based position of the first bad facet
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def edge_label(omega: ss.Weight, sigma: int, tau: int):
    """Label of the covering edge sigma < tau: the weight of the added element."""
    added = tau & ~sigma
    return omega.dot(added)


def _key(omega: ss.Weight, e: int):
    # larger (weight, index) first; ties in weight broken by the index
    return (-omega.entries[e - 1], -e)


def lex_shelling_boolean(n: int, omega, t) -> ShellingOrder:
    """Facets of the order complex of the filtered Boolean lattice, sorted
    by their label words so that the label-decreasing chain comes first."""
    if not isinstance(omega, ss.Weight):
        omega = ss.Weight(omega)
    t = ss.to_fraction(t)
    if omega.n != n:
        raise NonGenericWeight(f"weight has length {omega.n}, expected {n}")
    if not omega.generic:
        raise NonGenericWeight(f"weight {omega.to_strings()} is not generic")
    if t > t_upper_bound(omega):
        raise TOutOfRange(f"t={t} exceeds min(0, w.[n])={t_upper_bound(omega)}")
    ss.check_n(n)
    P = filtered(Poset(n, range(1, (1 << n) - 1), source="boolean proper part"), omega, t)
    D = OrderComplex(P)
    E = ss.full(n)
    # maximal chains of the bounded Boolean lattice whose proper part stays above t
    chains = []

    def grow(current: int, prefix: tuple):
        if current == E:
            chains.append(prefix)
            return
        for e in range(1, n + 1):
            b = 1 << (e - 1)
            if current & b:
                continue
            nxt = current | b
            if nxt == E or omega.dot(nxt) > t:
                grow(nxt, prefix + (e,))

    grow(0, ())
    chains.sort(key=lambda perm: tuple(_key(omega, e) for e in perm))
    facets = []
    words = []
    for perm in chains:
        mask = 0
        S = 0
        for e in perm[:-1]:
            S |= 1 << (e - 1)
            mask |= 1 << P.index[S]
        facets.append(mask)
        words.append(tuple(omega.entries[e - 1] for e in perm))
    if set(facets) != set(D.facets):
        raise AssertionError("label-word facets disagree with the maximal chains of the filtered lattice")
    return ShellingOrder(D, facets, words)


def decreasing_chain(n: int, omega) -> tuple[int, ...]:
    if not isinstance(omega, ss.Weight):
        omega = ss.Weight(omega)
    return tuple(sorted(range(1, n + 1), key=lambda e: _key(omega, e)))


def verify_shelling(D: SimplicialComplex, order) -> ShellingVerdict:
    """Check that each facet meets the union of the earlier ones in a pure
    complex of codimension one.

    ``order`` is a list of facets given as vertex masks or label tuples.
    """
    if not D.is_pure():
        raise NotPure("shelling orders are only checked for pure complexes")
    masks = [f if isinstance(f, int) else D.mask(f) for f in (order.facets if isinstance(order, ShellingOrder) else order)]
    if sorted(masks) != sorted(D.facets) or len(set(masks)) != len(masks):
        raise NotAPermutation("the order is not a permutation of the facets")
    ridges: set[int] = set()
    earlier_faces: set[int] = set()
    for k, F in enumerate(masks):
        bits = [1 << i for i in range(F.bit_length()) if F >> i & 1]
        if k > 0:
            R = 0
            for b in bits:
                if F & ~b in ridges:
                    R |= b
            if R in earlier_faces:
                return ShellingVerdict(False, k + 1, "intersection with earlier facets is not pure of codimension one")
        for b in bits:
            ridges.add(F & ~b)
        subs = [0]
        for b in bits:
            subs += [s | b for s in subs]
        earlier_faces.update(subs)
    return ShellingVerdict(True)


def brute_force_shellable(D: SimplicialComplex):
    """Search all facet orders (with prefix pruning); None if none shells."""
    if len(D.facets) > BRUTE_FORCE_MAX_FACETS:
        raise TooLarge(f"{len(D.facets)} facets exceed the brute-force cap {BRUTE_FORCE_MAX_FACETS}")
    if not D.is_pure():
        raise NotPure("brute-force shelling needs a pure complex")
    facets = list(D.facets)

    def ok_extension(prefix, F):
        return all(
            any((F & G) & ~(F & H) == 0 and bin(F & H).count("1") == bin(F).count("1") - 1 for H in prefix)
            for G in prefix
        )

    def search(prefix, rest):
        if not rest:
            return list(prefix)
        for i, F in enumerate(rest):
            if not prefix or ok_extension(prefix, F):
                found = search(prefix + [F], rest[:i] + rest[i + 1:])
                if found is not None:
                    return found
        return None

    found = search([], facets)
    if found is None:
        return None
    return ShellingOrder(D, found)
