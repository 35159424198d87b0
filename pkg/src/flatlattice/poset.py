"""Posets of flats ordered by inclusion: proper parts, filtrations by a
weight, intervals, order complexes, and the minor/interval comparison."""

from __future__ import annotations

import warnings
from fractions import Fraction

from . import subsets as ss
from .errors import NonGenericWeight, NotComparable, RankTooSmall, TOutOfRangeWarning
from .matroid import Matroid, contract, restrict


class Poset:
    """A finite family of subsets of [n] ordered by inclusion.

    Elements are kept in a linear extension (by cardinality, then
    lexicographically).  ``up[i]`` / ``down[i]`` are bitsets over element
    indices of the strictly larger / smaller elements.
    """

    __slots__ = ("n", "elements", "index", "up", "down", "omega", "t", "source", "_covers")

    def __init__(self, n: int, elements, omega=None, t=None, source: str = ""):
        self.n = n
        self.elements = tuple(sorted(set(elements), key=ss.sort_key))
        self.index = {e: i for i, e in enumerate(self.elements)}
        m = len(self.elements)
        up = [0] * m
        down = [0] * m
        els = self.elements
        for i in range(m):
            a = els[i]
            for j in range(i + 1, m):
                b = els[j]
                if a & ~b == 0:
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self.up = up
        self.down = down
        self.omega = omega
        self.t = t
        self.source = source
        self._covers = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.elements == other.elements

    def __hash__(self):
        return hash((self.n, self.elements))

    def __repr__(self):
        return f"Poset(n={self.n}, {len(self)} elements)"

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def lt(self, a: int, b: int) -> bool:
        return a != b and a & ~b == 0

    def covers(self) -> list[int]:
        """``covers()[i]``: bitset of the elements covering element i."""
        if self._covers is None:
            out = []
            for i in range(len(self.elements)):
                above = self.up[i]
                c = above
                rest = above
                while rest:
                    low = rest & -rest
                    j = low.bit_length() - 1
                    c &= ~self.up[j]
                    rest ^= low
                out.append(c)
            self._covers = out
        return self._covers

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.up[i]]

    def induced(self, members) -> "Poset":
        return Poset(self.n, members, self.omega, self.t, self.source)

    def induced_by_mask(self, mask: int) -> "Poset":
        return self.induced([self.elements[i] for i in _bits(mask)])

    def maximal_chains(self) -> list[tuple[int, ...]]:
        """Maximal chains as tuples of element indices, bottom first."""
        cov = self.covers()
        out = []
        stack = [(i,) for i in reversed(self.minimal())]
        while stack:
            ch = stack.pop()
            c = cov[ch[-1]]
            if not c:
                out.append(ch)
                continue
            for j in reversed(list(_bits(c))):
                stack.append(ch + (j,))
        return out

    def is_pure(self) -> bool:
        return len({len(c) for c in self.maximal_chains()}) <= 1

    def chain_lengths(self) -> set[int]:
        return {len(c) for c in self.maximal_chains()}

    def labels(self) -> list[str]:
        return [ss.fmt(e) for e in self.elements]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def proper_lattice(M: Matroid) -> Poset:
    if M.rank < 2:
        raise RankTooSmall(f"proper part of the lattice needs rank >= 2, got {M.rank}")
    return Poset(M.n, M.proper_flats, source="proper part")


def t_upper_bound(omega: ss.Weight) -> Fraction:
    return min(Fraction(0), omega.total())


def filtered(P: Poset, omega, t, require_generic: bool = True) -> Poset:
    """Subposet {x in P : w.x > t}; warns if t > min(0, w.[n]).

    With ``require_generic=False`` a non-generic weight is accepted as long
    as no element of P has weight exactly t, so that the subposet is the
    same for every small generic perturbation of the weight.
    """
    if not isinstance(omega, ss.Weight):
        omega = ss.Weight(omega)
    if omega.n != P.n:
        raise NonGenericWeight(f"weight has length {omega.n}, ground set has size {P.n}")
    t = ss.to_fraction(t)
    if not omega.generic:
        if require_generic:
            raise NonGenericWeight(f"weight {omega.to_strings()} vanishes on some proper nonempty subset")
        tied = [x for x in P.elements if omega.dot(x) == t]
        if tied:
            raise NonGenericWeight(
                f"weight {omega.to_strings()} is not generic and puts {ss.fmt(tied[0])} exactly at t={t}"
            )
    if t > t_upper_bound(omega):
        warnings.warn(
            f"t={t} exceeds min(0, w.[n])={t_upper_bound(omega)}", TOutOfRangeWarning, stacklevel=2
        )
    keep = [x for x in P.elements if omega.dot(x) > t]
    return Poset(P.n, keep, omega, t, source="filtered " + P.source)


def _check_member(P: Poset, x):
    if x is not None and x not in P.index:
        raise NotComparable(f"{ss.fmt(x)} is not an element of the poset")


def interval(P: Poset, a, b, closed: tuple[bool, bool] = (False, False)) -> Poset:
    """Interval between a and b; ``None`` stands for an adjoined bottom/top.

    ``a`` and ``b`` need not lie in P when they are the corresponding open
    end (this lets one take intervals of L-hat inside the proper part).
    """
    if a is not None and b is not None and a & ~b:
        raise NotComparable(f"{ss.fmt(a)} is not below {ss.fmt(b)}")
    if closed[0]:
        _check_member(P, a)
    if closed[1]:
        _check_member(P, b)
    out = []
    for x in P.elements:
        above = a is None or (a & ~x == 0 and (closed[0] or x != a))
        below = b is None or (x & ~b == 0 and (closed[1] or x != b))
        if above and below:
            out.append(x)
    return Poset(P.n, out, P.omega, P.t, source="interval")


def upper(P: Poset, a, strict: bool = True) -> Poset:
    return interval(P, a, None, (not strict, False))


def lower(P: Poset, b, strict: bool = True) -> Poset:
    return interval(P, None, b, (False, not strict))


def order_complex(P: Poset):
    from .complex import OrderComplex  # complex imports this module

    return OrderComplex(P)


def heredity_check(M: Matroid, omega, t, sigma: int, tau: int) -> bool:
    """Compare an open interval of the filtered lattice with the filtered
    proper part of the minor (M|tau)/sigma under shifted data."""
    if not isinstance(omega, ss.Weight):
        omega = ss.Weight(omega)
    t = ss.to_fraction(t)
    if not (M.is_flat(sigma) and M.is_flat(tau)) or sigma == tau or sigma & ~tau:
        raise NotComparable(f"need flats sigma < tau, got {ss.fmt(sigma)}, {ss.fmt(tau)}")
    if not omega.generic:
        raise NonGenericWeight(f"weight {omega.to_strings()} is not generic")
    left = {
        F for F in M.flats
        if F != sigma and F != tau and sigma & ~F == 0 and F & ~tau == 0 and omega.dot(F) > t
    }
    minor = contract(restrict(M, tau), _relabel(sigma, tau))
    # labels of the minor refer to elements of M
    w_minor = omega.restrict(minor.labels)
    t_minor = t - omega.dot(sigma)
    if minor.rank < 2:
        right = set()
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TOutOfRangeWarning)
            filt = filtered(proper_lattice(minor), w_minor, t_minor)
        right = {sigma | ss.subset(minor.labels[e - 1] for e in ss.elements(G)) for G in filt.elements}
    return left == right


def _relabel(sub: int, within: int) -> int:
    """Bitmask of ``sub`` in the dense relabeling of ``within``."""
    pos = {e: i for i, e in enumerate(ss.elements(within))}
    return sum(1 << pos[e] for e in ss.elements(sub))
