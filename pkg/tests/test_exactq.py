from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from detline.exactq import (
    QuotientSpace, RationalMatrix, Subspace, det, equal_mod, image_basis, kernel_basis, lift,
    left_inverse, matrix_from_json, matrix_to_json, project_to_complement, quotient_of,
    rational_from_str, rational_to_str, rref, right_inverse, solve, unit_vec,
)

M = RationalMatrix.from_rows


def leibniz(rows):
    """Independent determinant: sum over permutations."""
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


fracs = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = [[draw(fracs) for _ in range(n)] for _ in range(m)]
    return RationalMatrix(m, n, tuple(tuple(r) for r in rows))


def test_rref_examples():
    r, piv = rref(M([[2, 0], [0, 3]]))
    assert r == RationalMatrix.identity(2) and tuple(piv) == (0, 1)
    r, piv = rref(M([[1, 2], [2, 4]]))
    assert r == M([[1, 2], [0, 0]]) and tuple(piv) == (0,)
    r, piv = rref(RationalMatrix.zeros(0, 0))
    assert r.shape == (0, 0) and tuple(piv) == ()


def test_kernel_examples():
    proj = M([[0, 0, 1]])
    assert kernel_basis(proj) == Subspace.span(3, [unit_vec(3, 0), unit_vec(3, 1)])
    assert kernel_basis(M([[1, 2], [3, 4]])).dim == 0
    assert kernel_basis(RationalMatrix.zeros(3, 2)) == Subspace.whole(2)


def test_image_and_quotient_examples():
    assert image_basis(RationalMatrix.zeros(2, 2)).dim == 0
    assert QuotientSpace(2, Subspace.zero(2)).dim == 2
    assert image_basis(M([[1], [1]])) == Subspace.span(2, [(1, 1)])
    assert QuotientSpace(3, Subspace.span(3, [unit_vec(3, 0), unit_vec(3, 1)])).dim == 1


def test_projection_examples():
    q = QuotientSpace(2, Subspace.span(2, [(1, 0)]))
    assert project_to_complement(q, (3, 5)) == (0, 5)
    assert equal_mod(q, (3, 5), (7, 5))
    assert not equal_mod(q, (3, 5), (3, 6))


def test_subquotient():
    top = Subspace.span(3, [(1, 0, 0), (0, 1, 1)])
    q = quotient_of(top, Subspace.span(3, [(1, 0, 0)]))
    assert q.dim == 1
    assert q.contains((2, 1, 1)) and not q.contains((0, 0, 1))
    with pytest.raises(ValueError):
        quotient_of(Subspace.span(3, [(1, 0, 0)]), top)


@given(matrices(8))
def test_rank_nullity(m):
    assert kernel_basis(m).dim + m.rank() == m.ncols


@given(matrices(5))
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert all(x == 0 for x in m.apply(v))


@given(st.integers(0, 4).flatmap(lambda n: st.lists(st.lists(fracs, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_leibniz(rows):
    assert det(rows) == leibniz(rows)


@given(matrices(5))
def test_quotient_lift_roundtrip(m):
    q = QuotientSpace(m.nrows, image_basis(m))
    for k in range(q.dim):
        c = tuple(Fraction(int(i == k)) for i in range(q.dim))
        assert q.coords(lift(q, c)) == c


@given(matrices(5))
def test_solve_and_one_sided_inverses(m):
    b = m.apply([Fraction(i + 1) for i in range(m.ncols)])
    x = solve(m, b)
    assert x is not None and m.apply(x) == b
    if m.rank() == m.nrows:
        assert m @ right_inverse(m) == RationalMatrix.identity(m.nrows)
    if m.rank() == m.ncols:
        assert left_inverse(m) @ m == RationalMatrix.identity(m.ncols)


@given(matrices(4))
def test_annihilator_is_orthogonal_complement(m):
    s = image_basis(m)
    ann = s.annihilator()
    assert ann.dim + s.dim == m.nrows
    for a in ann.basis:
        for v in s.basis:
            assert sum(x * y for x, y in zip(a, v)) == 0


def test_json_roundtrip():
    m = M([[Fraction(1, 2), -3], [0, Fraction(-7, 5)]])
    assert matrix_from_json(matrix_to_json(m), 2, 2) == m
    assert matrix_from_json([], 0, 3).shape == (0, 3)
    assert rational_to_str(Fraction(-7, 5)) == "-7/5" and rational_to_str(Fraction(4)) == "4"
    assert rational_from_str("3/6") == Fraction(1, 2)
