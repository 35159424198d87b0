"""Subsets of a ground set [n] as integer bitmasks, and exact rational weights.

Element ``i`` (1-based) is stored in bit ``i - 1``.  Bitmasks are plain
``int`` values, so union/intersection/complement are the usual bit
operations and cardinality is ``int.bit_count``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GroundSetTooLarge, InvalidParameters

MAX_N = 24


def check_n(n: int) -> int:
    if not isinstance(n, int) or n < 0:
        raise InvalidParameters(f"ground-set size must be a nonnegative integer, got {n!r}")
    if n > MAX_N:
        raise GroundSetTooLarge(f"ground set of size {n} exceeds the cap n <= {MAX_N}")
    return n


def full(n: int) -> int:
    return (1 << n) - 1


def subset(elements: Iterable[int], n: int | None = None) -> int:
    """Bitmask of a collection of 1-based elements."""
    bits = 0
    for e in elements:
        if not isinstance(e, int) or e < 1 or (n is not None and e > n):
            raise InvalidParameters(f"element {e!r} outside ground set [1..{n}]")
        bits |= 1 << (e - 1)
    return bits


def elements(bits: int) -> tuple[int, ...]:
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def card(bits: int) -> int:
    return bin(bits).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def fmt(bits: int) -> str:
    return "{" + ",".join(map(str, elements(bits))) + "}"


def sort_key(bits: int) -> tuple:
    return (card(bits), elements(bits))


def subsets_of(bits: int):
    """All submasks of ``bits`` (including 0 and ``bits``)."""
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidParameters("floating-point weights are not accepted; use exact rationals")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidParameters(f"not an exact rational: {x!r}") from exc


class Weight:
    """Exact rational weight vector on [n]; ``w.dot(S)`` is the sum over S."""

    __slots__ = ("entries", "_generic")

    def __init__(self, entries: Sequence):
        ents = tuple(to_fraction(x) for x in entries)
        check_n(len(ents))
        self.entries = ents
        self._generic = None

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, Weight) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Weight({[str(x) for x in self.entries]})"

    def dot(self, bits: int) -> Fraction:
        total = Fraction(0)
        i = 0
        while bits:
            if bits & 1:
                total += self.entries[i]
            bits >>= 1
            i += 1
        return total

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    @property
    def generic(self) -> bool:
        """True iff w.S != 0 for every proper nonempty S (full 2^n scan)."""
        if self._generic is None:
            sums = [Fraction(0)]
            for w in self.entries:
                sums += [s + w for s in sums]
            # index 0 is the empty set, the last index is [n]
            self._generic = all(s != 0 for s in sums[1:-1])
        return self._generic

    def restrict(self, labels: Sequence[int]) -> "Weight":
        """Weight on [len(labels)] whose i-th entry is w at original element labels[i-1]."""
        return Weight([self.entries[e - 1] for e in labels])

    def to_strings(self) -> list[str]:
        return [str(x) for x in self.entries]
