import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from flatlattice import linalg as la
from flatlattice.errors import CertificateError

import oracles as orc


def matrices(max_rows=5, max_cols=5, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def _sympy_factors(A):
    return [abs(int(x)) for x in invariant_factors(Matrix(A), domain=ZZ) if x != 0]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_certificate_and_factors(A):
    snf = la.smith_normal_form(A)
    assert snf.verify()
    assert snf.invariant_factors == _sympy_factors(A)


@settings(max_examples=150, deadline=None)
@given(matrices(6, 6, 3))
def test_sparse_reduction_agrees_with_dense(A):
    cols = {j: {i: A[i][j] for i in range(len(A)) if A[i][j]} for j in range(len(A[0]))}
    res = la.sparse_invariant_factors(cols)
    expected = _sympy_factors(A)
    assert res.rank == len(expected)
    assert res.factors == [x for x in expected if x != 1]


@settings(max_examples=100, deadline=None)
@given(matrices(4, 5, 5))
def test_hermite_form(A):
    hf = la.hermite_normal_form(A)
    assert hf.verify()
    assert hf.rank == orc.rank_q(A)
    assert la.rank(A) == hf.rank


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_determinant_matches_sympy(A):
    assert la.determinant(A) == Matrix(A).det()


def test_tampered_certificate_is_rejected():
    snf = la.smith_normal_form([[2, 4], [6, 8]])
    snf.D.data[0][0] += 1
    with pytest.raises(CertificateError):
        snf.verify()


def test_lattice_index_and_containment():
    full = [[1, 0], [0, 1]]
    sub = [[2, 0], [0, 3]]
    assert la.contains(full, sub)
    assert not la.contains(sub, full)
    assert la.lattice_index(full, sub) == 6
    assert la.lattice_index(full, [[1, 1]]) is None


def test_integer_kernel_and_saturation():
    rows = [[1, 2, 3], [2, 4, 6]]
    K = la.integer_kernel(rows, 3)
    assert len(K) == 2
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    sat = la.saturation([[2, 4, 6]], 3)
    assert la.lattice_index(sat, [[2, 4, 6]]) == 2
