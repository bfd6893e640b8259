from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from dgsmooth.exact import QMatrix, Subspace, kernel_basis, rank, rref

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    # bias toward rank-deficient matrices by repeating rows
    rows = [draw(st.lists(small, min_size=c, max_size=c)) for _ in range(r)]
    if r >= 2 and draw(st.booleans()):
        rows[-1] = [2 * x for x in rows[0]]
    return QMatrix.from_rows(rows) if r else QMatrix.zero(0, c)


def test_rref_examples():
    m, piv = rref(QMatrix.identity(2))
    assert m == QMatrix.identity(2) and piv == [0, 1]
    m, piv = rref(QMatrix.zero(3, 3))
    assert m.is_zero() and piv == []
    m, piv = rref(QMatrix.from_rows([[1, 2], [2, 4]]))
    assert m.to_rows() == [[1, 2], [0, 0]] and piv == [0]


def test_kernel_examples():
    assert kernel_basis(QMatrix.identity(3)).cols == 0
    assert kernel_basis(QMatrix.zero(1, 2)).cols == 2
    k = kernel_basis(QMatrix.from_rows([[1, 1]]))
    assert k.cols == 1
    a, b = k.column(0)
    assert a == -b != 0


def test_rank_examples():
    assert rank(QMatrix.identity(4)) == 4
    assert rank(QMatrix.zero(3, 2)) == 0
    assert rank(QMatrix.from_rows([[1, 2], [2, 4]])) == 1


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).cols == m.cols


@given(matrices())
def test_rref_idempotent(m):
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv
    assert piv == sorted(set(piv))


@given(matrices())
def test_kernel_annihilated(m):
    k = kernel_basis(m)
    if k.cols and m.rows:
        assert (m @ k).is_zero()


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=6))
def test_subspace_growth_matches_rank(vectors):
    sp = Subspace(4)
    grown = sum(sp.add(v) for v in vectors)
    assert grown == sp.dim == (rank(QMatrix.from_rows(vectors)) if vectors else 0)
    for v in vectors:
        assert sp.contains(v)
    assert len(sp.complement_positions()) == 4 - sp.dim


def test_fraction_entries_are_exact():
    m = QMatrix.from_rows([[Fraction(1, 3), Fraction(2, 3)], [1, 2]])
    assert rank(m) == 1
