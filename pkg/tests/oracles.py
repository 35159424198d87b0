"""Independent brute-force references.  Nothing here imports flatlattice
internals, so agreement with the package is a genuine cross-check."""

from __future__ import annotations

import itertools
from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def subsets(n):
    return range(1 << n)


def popcount(x):
    return bin(x).count("1")


def uniform_rank(r):
    return lambda S: min(popcount(S), r)


def graphic_rank(edges):
    def rank(S):
        parent = {}

        def find(v):
            while parent.setdefault(v, v) != v:
                v = parent[v]
            return v

        r = 0
        for i, (a, b) in enumerate(edges):
            if S >> i & 1:
                x, y = find(a), find(b)
                if x != y:
                    parent[x] = y
                    r += 1
        return r
    return rank


FANO_LINES = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


def rank3_lines_rank(lines):
    masks = [sum(1 << (e - 1) for e in L) for L in lines]

    def rank(S):
        k = popcount(S)
        if k <= 2:
            return k
        return 2 if any(S & ~L == 0 for L in masks) else 3
    return rank


def flats_from_rank(n, rank):
    out = []
    for S in subsets(n):
        rs = rank(S)
        if all(rank(S | 1 << i) > rs for i in range(n) if not S >> i & 1):
            out.append(S)
    return out


def whitney_mobius(n, rank):
    """mu(0,1) of the lattice of flats = sum over spanning S of (-1)^|S|
    (constant term of the characteristic polynomial, loopless case)."""
    r = rank((1 << n) - 1)
    return sum((-1) ** popcount(S) for S in subsets(n) if rank(S) == r)


def dual_rank(n, rank):
    full = (1 << n) - 1
    r = rank(full)
    return lambda S: popcount(S) - r + rank(full & ~S)


# -- homology ------------------------------------------------------------------

def all_faces(facets):
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(len(f) + 1):
            faces.update(itertools.combinations(f, k))
    return faces


def reduced_homology(facets, sub_facets=None):
    """{degree: (betti, torsion tuple)} of the augmented (relative) chain
    complex, computed from dense boundary matrices with sympy's Smith form."""
    faces = all_faces(facets)
    if sub_facets is not None:
        faces -= all_faces(sub_facets)
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for v in by_dim.values():
        v.sort()
    index = {d: {f: i for i, f in enumerate(v)} for d, v in by_dim.items()}
    rank_of = {}
    tors_of = {}
    for d, cells in by_dim.items():
        lower = index.get(d - 1, {})
        if not lower:
            rank_of[d] = 0
            tors_of[d - 1] = ()
            continue
        A = [[0] * len(cells) for _ in lower]
        for j, f in enumerate(cells):
            for i in range(len(f)):
                g = f[:i] + f[i + 1:]
                if g in lower:
                    A[lower[g]][j] = (-1) ** i
        facs = [int(x) for x in invariant_factors(Matrix(A), domain=ZZ) if x != 0]
        rank_of[d] = len(facs)
        tors_of[d - 1] = tuple(sorted(abs(x) for x in facs if abs(x) != 1))
    out = {}
    for d, cells in by_dim.items():
        betti = len(cells) - rank_of.get(d, 0) - rank_of.get(d + 1, 0)
        tors = tors_of.get(d, ())
        if betti or tors:
            out[d] = (betti, tors)
    return out


def as_plain(H):
    """flatlattice Homology -> {degree: (betti, torsion)} for comparison."""
    return {d: (g.betti, tuple(sorted(g.torsion))) for d, g in H.nonzero().items()}


def rank_q(rows):
    """Rank over Q by Fraction elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def maximal_chains(elements, leq):
    """All maximal chains of a finite poset given by a comparison function."""
    els = list(elements)
    mins = [a for a in els if not any(b != a and leq(b, a) for b in els)]

    def extend(chain):
        top = chain[-1]
        ups = [b for b in els if b != top and leq(top, b)]
        covers = [b for b in ups if not any(c != b and c != top and leq(top, c) and leq(c, b) for c in ups)]
        if not covers:
            yield tuple(chain)
        for b in covers:
            yield from extend(chain + [b])

    for a in mins:
        yield from extend([a])
