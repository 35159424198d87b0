import itertools
import warnings
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from flatlattice import complex as cx
from flatlattice import homology as hm
from flatlattice import matroid as mt
from flatlattice import poset as ps
from flatlattice import shelling as sh
from flatlattice import subsets as ss
from flatlattice.errors import NonGenericWeight, NotAPermutation, TOutOfRange, TOutOfRangeWarning

import oracles as orc

SMALL = {
    "U2,3": mt.uniform(2, 3), "U3,4": mt.uniform(3, 4), "U3,5": mt.uniform(3, 5), "B4": mt.boolean(4),
    "U4,5": mt.uniform(4, 5), "K4": mt.graphic(mt.complete_graph_edges(4)), "Fano": mt.fano(),
}


@st.composite
def matroid_weight_t(draw, in_range=True):
    name = draw(st.sampled_from(sorted(SMALL)))
    M = SMALL[name]
    w = ss.Weight(draw(st.lists(st.integers(-20, 20), min_size=M.n, max_size=M.n)))
    assume(w.generic)
    top = ps.t_upper_bound(w)
    if in_range:
        t = top - Fraction(draw(st.integers(0, 40)), draw(st.integers(1, 3)))
    else:
        t = Fraction(draw(st.integers(-40, 40)), 2)
        assume(all(w.dot(F) != t for F in M.proper_flats))
    return name, M, w, t


@settings(max_examples=120, deadline=None)
@given(matroid_weight_t())
def test_filtered_lattice_is_pure_cm_wedge(case):
    name, M, w, t = case
    P = ps.filtered(ps.proper_lattice(M), w, t)
    assert P.chain_lengths() == {M.rank - 1}
    D = cx.OrderComplex(P)
    assert D.dim == M.rank - 2
    assert hm.cm_over_Z(D).passed
    assert hm.wedge_profile(D, M.rank - 2).passed


@settings(max_examples=120, deadline=None)
@given(matroid_weight_t(in_range=False))
def test_interval_cm_test_agrees_with_links(case):
    name, M, w, t = case
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TOutOfRangeWarning)
        P = ps.filtered(ps.proper_lattice(M), w, t)
    D = cx.OrderComplex(P)
    if D.is_void:
        return
    fast = hm.cm_over_Z(D, method="auto")
    slow = hm.cm_over_Z(D, method="links")
    assert fast.verdict == slow.verdict


def test_interval_cm_test_on_pure_failures():
    # pure but not CM: the seven-point example at t = 0, and a disjoint union of chains
    D = cx.OrderComplex(ps.filtered(ps.proper_lattice(mt.seven_point_example()),
                                    (1, 1, -3, -3, -3, 1, 1), 0, require_generic=False))
    assert hm.cm_over_Z(D).verdict == "FAIL"
    assert hm.cm_over_Z(D, method="links").verdict == "FAIL"
    P = ps.Poset(4, [0b0001, 0b0011, 0b0100, 0b1100])
    D = cx.OrderComplex(P)
    assert hm.cm_over_Z(D).verdict == hm.cm_over_Z(D, method="links").verdict == "FAIL"


@settings(max_examples=60, deadline=None)
@given(matroid_weight_t())
def test_heredity_over_all_intervals(case):
    name, M, w, t = case
    for s, u in itertools.combinations(M.flats, 2):
        if s & ~u == 0:
            assert ps.heredity_check(M, w, t, s, u)


def test_filtered_rejects_and_warns():
    L = ps.proper_lattice(mt.uniform(2, 3))
    with pytest.raises(NonGenericWeight):
        ps.filtered(L, (1, -1, 0), -1)
    with pytest.warns(TOutOfRangeWarning):
        ps.filtered(L, (1, 2, -4), 1)


def test_interval_dimension():
    P = ps.proper_lattice(mt.boolean(5))
    a, b = ss.subset([1]), ss.subset([1, 2, 3, 4])
    I = ps.interval(P, a, b)
    assert cx.OrderComplex(I).dim == 3 - 1 - 1
    chains = list(orc.maximal_chains(I.elements, lambda x, y: x & ~y == 0))
    assert {len(c) for c in chains} == {2}


@st.composite
def boolean_cases(draw):
    n = draw(st.integers(2, 6))
    w = ss.Weight(draw(st.lists(st.integers(-30, 30), min_size=n, max_size=n)))
    assume(w.generic)
    t = ps.t_upper_bound(w) - draw(st.integers(0, 60))
    return n, w, t


def _is_shelling_brute(facets):
    """Every facet meets the union of the earlier ones in a pure codim-1 complex."""
    for k in range(1, len(facets)):
        F = facets[k]
        inter = {frozenset(F) & frozenset(G) for G in facets[:k]}
        maximal = [A for A in inter if not any(A < B for B in inter)]
        if any(len(A) != len(F) - 1 for A in maximal):
            return False
    return True


@settings(max_examples=100, deadline=None)
@given(boolean_cases())
def test_lex_shelling_boolean(case):
    n, w, t = case
    order = sh.lex_shelling_boolean(n, w, t)
    assert sh.verify_shelling(order.complex, order).passed
    assert _is_shelling_brute(order.facet_labels())
    assert order.words[0] == tuple(w.entries[e - 1] for e in sh.decreasing_chain(n, w))
    # shellable implies CM
    assert hm.cm_over_Z(order.complex).passed


def test_shelling_rejects():
    with pytest.raises(TOutOfRange):
        sh.lex_shelling_boolean(3, (1, 2, -4), 1)
    with pytest.raises(NonGenericWeight):
        sh.lex_shelling_boolean(3, (1, -1, 0), -1)
    D = cx.SimplicialComplex([(1, 2), (2, 3), (3, 4)])
    assert sh.verify_shelling(D, [(1, 2), (2, 3), (3, 4)]).passed
    bad = sh.verify_shelling(D, [(1, 2), (3, 4), (2, 3)])
    assert not bad.passed and bad.index == 2
    with pytest.raises(NotAPermutation):
        sh.verify_shelling(D, [(1, 2), (2, 3)])


def test_brute_force_shelling():
    assert sh.brute_force_shellable(cx.SimplicialComplex([(1, 2), (3, 4), (2, 3)])) is not None
    assert sh.brute_force_shellable(cx.SimplicialComplex([(1, 2), (3, 4)])) is None
