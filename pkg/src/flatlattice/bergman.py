"""Bergman fans of matroids over an explicit integer circuit, balancing,
local fans, and halfspaces expressed as weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import subsets as ss
from .complex import OrderComplex
from .errors import InvalidParameters, NonGenericHalfspace, NotAFlat, NotASubchain
from .homology import relative_homology, wedge_profile_from
from .linalg import determinant, rank
from .matroid import Matroid, contract, restrict
from .poset import Poset, filtered, proper_lattice


@dataclass(frozen=True)
class CircuitRealization:
    """Vectors e_1..e_n in Z^(n-1) summing to zero, any n-1 of them a basis."""

    vectors: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return self.n - 1

    def ray(self, S: int) -> tuple[int, ...]:
        out = [0] * self.dim
        for e in ss.elements(S):
            for k, x in enumerate(self.vectors[e - 1]):
                out[k] += x
        return tuple(out)

    def check(self) -> bool:
        if any(sum(v[k] for v in self.vectors) for k in range(self.dim)):
            raise InvalidParameters("circuit vectors do not sum to zero")
        for skip in range(self.n):
            rows = [v for i, v in enumerate(self.vectors) if i != skip]
            if abs(determinant(rows)) != 1:
                raise InvalidParameters(f"dropping e_{skip + 1} does not leave a lattice basis")
        return True


def standard_circuit(n: int) -> CircuitRealization:
    if not isinstance(n, int) or n < 2:
        raise InvalidParameters(f"a circuit needs n >= 2 vectors, got {n!r}")
    ss.check_n(n)
    vecs = [tuple(int(i == k) for k in range(n - 1)) for i in range(n - 1)]
    vecs.append(tuple(-1 for _ in range(n - 1)))
    return CircuitRealization(tuple(vecs))


def circuit_from_matrix(vectors: Sequence[Sequence[int]]) -> CircuitRealization:
    c = CircuitRealization(tuple(tuple(int(x) for x in v) for v in vectors))
    c.check()
    return c


class BergmanFan:
    """Rays e_F for proper flats F; cones are chains of proper flats."""

    def __init__(self, M: Matroid, circuit: CircuitRealization | None = None):
        if M.rank < 1:
            raise InvalidParameters("Bergman fan needs rank >= 1")
        self.M = M
        self.circuit = circuit or standard_circuit(M.n)
        if self.circuit.n != M.n:
            raise InvalidParameters("circuit size differs from the ground set")
        self.rays = {F: self.circuit.ray(F) for F in M.proper_flats}
        self.poset = Poset(M.n, M.proper_flats, source="proper part")
        self._complex = None
        self._maximal = None

    @property
    def ambient_dim(self) -> int:
        return self.circuit.dim

    @property
    def dim(self) -> int:
        return self.M.rank - 1

    @property
    def complex(self) -> OrderComplex:
        if self._complex is None:
            self._complex = OrderComplex(self.poset)
        return self._complex

    def maximal_cones(self) -> list[tuple[int, ...]]:
        """Maximal chains of proper flats, bottom first."""
        if self._maximal is None:
            els = self.poset.elements
            if not els:
                self._maximal = [()]
            else:
                self._maximal = [tuple(els[i] for i in ch) for ch in self.poset.maximal_chains()]
        return self._maximal

    def cones(self, dim: int | None = None) -> list[tuple[int, ...]]:
        D = self.complex
        masks = D.faces() if dim is None else D.faces(dim - 1)
        return [D.labels(m) for m in masks]

    def generators(self, chain: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.rays[F] for F in chain]

    def cone_dimension(self, chain: Sequence[int]) -> int:
        return rank(self.generators(chain)) if chain else 0

    def check_cone_dimensions(self) -> bool:
        for ch in self.maximal_cones():
            if self.cone_dimension(ch) != len(ch):
                raise InvalidParameters(f"rays of the chain {[ss.fmt(F) for F in ch]} are dependent")
        return True

    def summary(self) -> dict:
        byd = self.complex.faces_by_dim()
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "rays": len(self.rays),
            "cones_by_dim": {str(d + 1): len(v) for d, v in sorted(byd.items()) if d >= 0},
        }


def bergman_fan(M: Matroid, circuit: CircuitRealization | None = None) -> BergmanFan:
    return BergmanFan(M, circuit)


@dataclass
class BalanceResult:
    passed: bool
    chain: tuple
    completions: tuple
    total: tuple


def _is_chain(chain) -> bool:
    return all(a & ~b == 0 and a != b for a, b in zip(chain, chain[1:]))


def balancing_check(B: BergmanFan, chain: Sequence[int]) -> BalanceResult:
    """Sum of the rays completing a codimension-one chain lies in its span."""
    M = B.M
    chain = tuple(sorted(chain, key=ss.sort_key))
    if not all(F in B.rays for F in chain) or not _is_chain(chain) or len(chain) != M.rank - 2:
        raise NotASubchain("not a chain of proper flats missing exactly one rank")
    ranks = [0] + [M.flat_rank(F) for F in chain] + [M.rank]
    full = [0, *chain, M.ground]
    gaps = [i for i in range(len(ranks) - 1) if ranks[i + 1] - ranks[i] != 1]
    if len(gaps) != 1 or ranks[gaps[0] + 1] - ranks[gaps[0]] != 2:
        raise NotASubchain("chain does not come from a maximal chain by removing one flat")
    lo, hi = full[gaps[0]], full[gaps[0] + 1]
    k = ranks[gaps[0]] + 1
    comps = tuple(G for G in M.flats_by_rank[k] if lo & ~G == 0 and G & ~hi == 0)
    total = [0] * B.ambient_dim
    for G in comps:
        for i, x in enumerate(B.circuit.ray(G)):
            total[i] += x
    gens = [B.circuit.ray(F) for F in chain]
    ok = rank(gens + [total]) == rank(gens) if gens else not any(total)
    return BalanceResult(ok, chain, comps, tuple(total))


def codim_one_chains(B: BergmanFan) -> list[tuple[int, ...]]:
    out = set()
    for ch in B.maximal_cones():
        for i in range(len(ch)):
            out.add(ch[:i] + ch[i + 1:])
    return sorted(out, key=lambda c: [ss.sort_key(F) for F in c])


def local_fans(M: Matroid, F: int) -> tuple[Matroid, Matroid]:
    if F == 0 or F == M.ground or not M.is_flat(F):
        raise NotAFlat(f"{ss.fmt(F)} is not a proper nonempty flat")
    return restrict(M, F), contract(M, F)


class Halfspace:
    """{x : normal . x > 0} in Z^(n-1); its weight is w_i = normal . e_i."""

    def __init__(self, normal: Sequence, circuit: CircuitRealization):
        self.normal = tuple(ss.to_fraction(x) for x in normal)
        self.circuit = circuit
        if len(self.normal) != circuit.dim:
            raise InvalidParameters(f"normal has length {len(self.normal)}, expected {circuit.dim}")
        self.weight = ss.Weight([sum((a * b for a, b in zip(self.normal, v)), Fraction(0)) for v in circuit.vectors])

    @classmethod
    def from_weight(cls, omega, circuit: CircuitRealization | None = None) -> "Halfspace":
        """Halfspace inducing a zero-sum weight (standard circuit only)."""
        if not isinstance(omega, ss.Weight):
            omega = ss.Weight(omega)
        circuit = circuit or standard_circuit(omega.n)
        if circuit != standard_circuit(omega.n):
            raise InvalidParameters("from_weight is defined for the standard circuit")
        if omega.total() != 0:
            raise InvalidParameters("a halfspace weight sums to zero")
        return cls(omega.entries[:-1], circuit)

    @property
    def generic(self) -> bool:
        return self.weight.generic

    def require_generic(self):
        if not self.generic:
            raise NonGenericHalfspace(f"normal {self.normal_strings()} vanishes on e_S for some proper S")

    def negated(self) -> "Halfspace":
        return Halfspace([-x for x in self.normal], self.circuit)

    def value(self, S: int) -> Fraction:
        return self.weight.dot(S)

    def normal_strings(self) -> list[str]:
        return [str(x) for x in self.normal]


def positive_part(M: Matroid, H: Halfspace) -> OrderComplex:
    """Order complex of the flats on the open positive side of H."""
    H.require_generic()
    if M.rank < 2:
        return OrderComplex(Poset(M.n, []))
    return OrderComplex(filtered(proper_lattice(M), H.weight, 0))


def positive_flats(M: Matroid, H: Halfspace) -> list[int]:
    H.require_generic()
    return [F for F in M.proper_flats if H.value(F) > 0]


def positive_cones(B: BergmanFan, H: Halfspace) -> list[tuple[int, ...]]:
    """Maximal cones meeting the open positive side (some ray positive)."""
    H.require_generic()
    return [ch for ch in B.maximal_cones() if any(H.value(F) > 0 for F in ch)]


@dataclass
class LefschetzResult:
    passed: bool
    degree: int
    homology: object

    def to_dict(self):
        return {"verdict": "PASS" if self.passed else "FAIL", "degree": self.degree,
                "relative_homology": self.homology.to_dict()}


def lefschetz_pair(M: Matroid, H: Halfspace) -> LefschetzResult:
    """Relative homology of (order complex of L, order complex of L^{>0})."""
    H.require_generic()
    L = proper_lattice(M)
    big = OrderComplex(L)
    small = OrderComplex(filtered(L, H.weight, 0))
    return relative_lefschetz(big, small, M.rank - 2)


def relative_lefschetz(big: OrderComplex, small: OrderComplex, degree: int) -> LefschetzResult:
    Hrel = relative_homology(big, small)
    ok = wedge_profile_from(Hrel, degree).passed
    return LefschetzResult(ok, degree, Hrel)
