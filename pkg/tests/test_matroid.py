import pytest
from hypothesis import given, settings, strategies as st

from flatlattice import matroid as mt
from flatlattice import subsets as ss
from flatlattice.errors import ExchangeAxiomFails, GroundSetTooLarge, InvalidParameters, Loops, NotALattice, PartitionAxiomFails

import oracles as orc

K4 = mt.complete_graph_edges(4)


def _cases():
    out = [(f"U{r},{n}", mt.uniform(r, n), n, orc.uniform_rank(r)) for n in range(1, 7) for r in range(1, n + 1)]
    out.append(("K4", mt.graphic(K4), 6, orc.graphic_rank(K4)))
    out.append(("Fano", mt.fano(), 7, orc.rank3_lines_rank(orc.FANO_LINES)))
    return out


CASES = _cases()


@pytest.mark.parametrize("name,M,n,rank", CASES, ids=[c[0] for c in CASES])
def test_flats_and_ranks_match_brute_force(name, M, n, rank):
    assert sorted(M.flats) == sorted(orc.flats_from_rank(n, rank))
    for S in orc.subsets(n):
        assert M.rank_of(S) == rank(S)
    assert M.rank == rank((1 << n) - 1)


@pytest.mark.parametrize("name,M,n,rank", CASES, ids=[c[0] for c in CASES])
def test_mobius_matches_whitney(name, M, n, rank):
    assert mt.mobius(M) == orc.whitney_mobius(n, rank)
    assert mt.mobius(M) != 0


@pytest.mark.parametrize("name,M,n,rank", CASES, ids=[c[0] for c in CASES])
def test_dual_rank_function(name, M, n, rank):
    D = mt.dual(M)
    drank = orc.dual_rank(n, rank)
    for S in orc.subsets(n):
        assert D.rank_of(S) == drank(S)
    assert mt.dual(D) == M


def test_known_mobius_values():
    assert mt.mobius(mt.fano()) == -8
    assert mt.mobius(mt.graphic(K4)) == -6
    assert [mt.mobius(mt.boolean(n)) for n in range(1, 6)] == [-1, 1, -1, 1, -1]
    assert mt.mobius(mt.uniform(2, 3)) == 2


def test_closure_operator_on_all_subsets():
    for M in (mt.fano(), mt.graphic(K4), mt.uniform(3, 6)):
        for S in range(1 << M.n):
            c = M.closure(S)
            assert S & ~c == 0
            assert M.closure(c) == c
            for i in range(M.n):
                assert c & ~M.closure(S | 1 << i) == 0


def test_covers_partition_complement():
    for M in (mt.fano(), mt.graphic(K4), mt.uniform(3, 5)):
        for F in M.flats:
            if F == M.ground:
                continue
            parts = [G & ~F for G in M.covers(F)]
            union = 0
            for p in parts:
                assert p and not union & p
                union |= p
            assert union == M.ground & ~F


def test_restrict_and_contract_ranks():
    M = mt.fano()
    S = ss.subset([1, 2, 3, 4])
    R = mt.restrict(M, S)
    for T in ss.subsets_of(S):
        assert R.rank_of(_relabel(T, S)) == M.rank_of(T)
    F = ss.subset([1, 2, 3])
    C = mt.contract(M, F)
    rest = M.ground & ~F
    for T in ss.subsets_of(rest):
        assert C.rank_of(_relabel(T, rest)) == M.rank_of(T | F) - M.rank_of(F)


def _relabel(T, S):
    """Bits of T renumbered along the elements of S in increasing order."""
    els = ss.elements(S)
    return sum(1 << k for k, e in enumerate(els) if T >> (e - 1) & 1)


def test_contract_needs_a_flat():
    with pytest.raises(Loops):
        mt.contract(mt.fano(), ss.subset([1, 2]) | ss.subset([4]))


def test_from_flats_validates():
    every = [[e for e in (1, 2, 3) if S >> (e - 1) & 1] for S in range(8)]
    assert mt.from_flats(3, every) == mt.boolean(3)
    with pytest.raises(PartitionAxiomFails):
        mt.from_flats(4, [[], [1], [2], [3], [4], [1, 2], [1, 2, 3, 4]])
    with pytest.raises(NotALattice):
        mt.from_flats(3, [[], [1], [2], [1, 2]])
    with pytest.raises(Loops):
        mt.from_flats(2, [[1], [1, 2]])


def test_from_bases_exchange():
    assert mt.from_bases(3, [[1, 2], [1, 3], [2, 3]]) == mt.uniform(2, 3)
    with pytest.raises(ExchangeAxiomFails):
        mt.from_bases(4, [[1, 2], [3, 4]])


def test_ground_set_limit_and_bad_parameters():
    with pytest.raises(GroundSetTooLarge):
        mt.uniform(2, 25)
    with pytest.raises(InvalidParameters):
        mt.uniform(5, 3)


def test_seven_point_example_has_listed_flats():
    M = mt.seven_point_example()
    assert M.rank == 3
    for F in mt.SEVEN_POINT_LISTED_FLATS:
        assert M.is_flat(ss.subset(F))


@st.composite
def graphs(draw):
    k = draw(st.integers(3, 5))
    pairs = [(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=2, max_size=7, unique=True))
    return edges


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_graphic_matroids_match_union_find(edges):
    M = mt.graphic(edges)
    rank = orc.graphic_rank(edges)
    n = len(edges)
    assert sorted(M.flats) == sorted(orc.flats_from_rank(n, rank))
    assert mt.mobius(M) == orc.whitney_mobius(n, rank)
    assert mt.dual(mt.dual(M)) == M
