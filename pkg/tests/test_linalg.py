from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import scalars
from galilean.exactnum import ONE, ZERO, as_scalar, sqrt_int
from galilean.linalg import SparseMatrix, in_span, kernel_basis, rank, span, vstack

SQRT2 = sqrt_int(2)


@st.composite
def matrices(draw, max_rows=4, max_cols=5, radicands=2):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    sparse = st.one_of(st.just(ZERO), st.just(ZERO), scalars(max_radicands=radicands))
    return SparseMatrix.from_dense([[draw(sparse) for _ in range(c)] for _ in range(r)])


def test_kernel_of_identity_is_trivial():
    assert kernel_basis(SparseMatrix.identity(3)).dim == 0


def test_kernel_of_zero_is_everything():
    assert kernel_basis(SparseMatrix.zeros(2, 3)).dim == 3


def test_kernel_single_relation():
    k = kernel_basis(SparseMatrix.from_dense([[1, SQRT2]]))
    assert k.basis == ((-SQRT2, ONE),)


def test_rank_examples():
    assert rank(SparseMatrix.identity(4)) == 4
    assert rank(SparseMatrix.from_dense([[1, SQRT2], [SQRT2, 2]])) == 1
    assert rank(SparseMatrix.zeros(3, 2)) == 0


def test_in_span_examples():
    e1 = span([[1, 0]], 2)
    assert in_span(e1, [3, 0]) == (True, (as_scalar(3),))
    assert in_span(e1, [0, 1])[0] is False
    s = span([[-SQRT2, 1]], 2)
    ok, coords = in_span(s, [-2, SQRT2])
    assert ok and coords == (SQRT2,)


def test_in_span_dimension_mismatch():
    with pytest.raises(ValueError):
        in_span(span([[1, 0]], 2), [1, 0, 0])


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.n_cols


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert m.apply(v) == {}


@st.composite
def one_family_matrices(draw):
    r = draw(st.sampled_from((2, 3, 5)))
    rows, cols = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    ints = st.integers(-3, 3)
    return SparseMatrix.from_dense(
        [[draw(ints) + draw(ints) * sqrt_int(r) for _ in range(cols)] for _ in range(rows)]
    )


@given(one_family_matrices())
def test_bareiss_agrees_with_gauss(m):
    assert rank(m, method="bareiss") == rank(m)


@given(matrices(max_cols=4), matrices(max_cols=4))
def test_stacked_kernel_is_intersection(m1, m2):
    c = min(m1.n_cols, m2.n_cols)
    a, b = m1.submatrix(None, range(c)), m2.submatrix(None, range(c))
    both = kernel_basis(vstack([a, b]))
    ka, kb = kernel_basis(a), kernel_basis(b)
    for v in both.basis:
        assert in_span(ka, v)[0] and in_span(kb, v)[0]
    # reverse inclusion: the intersection has dimension dim ka + dim kb - dim(ka + kb)
    plus = span(list(ka.basis) + list(kb.basis), c)
    assert both.dim == ka.dim + kb.dim - plus.dim


def test_bareiss_rejects_mixed_radicands():
    m = SparseMatrix.from_dense([[SQRT2, sqrt_int(3)]])
    with pytest.raises(ValueError):
        rank(m, method="bareiss")


def test_echelon_form():
    s = span([[1, 2, 3], [2, 4, 7]], 3)
    for b, p in zip(s.basis, s.pivots):
        assert b[p] == ONE
        assert all(x == ZERO for x in b[p + 1 :])
        for other in s.basis:
            if other is not b:
                assert other[p] == ZERO
