from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fernlab import exactlinalg as xl
from fernlab.errors import DimensionMismatch, ParseError, Singular
from fernlab.exactlinalg import Matrix

small = st.integers(-5, 5)


def vectors(dim, max_count=5):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), max_size=max_count)


def test_rref_examples():
    red, piv = xl.rref(Matrix.from_rows([[2, 0], [0, 3]]))
    assert red.entries == ((1, 0), (0, 1)) and piv == [0, 1]
    red, piv = xl.rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert red.entries == ((1, 2),) and piv == [0]
    red, piv = xl.rref(Matrix.from_rows([[0, 0]]))
    assert red.entries == () and piv == []


def test_span_examples():
    assert xl.span([(1, 1), (2, 2)], 2).basis == ((1, 1),)
    assert xl.span([], 3).dim == 0
    assert xl.span([(1, 0, 0), (1, 1, 0)], 3).basis == ((1, 0, 0), (0, 1, 0))
    with pytest.raises(DimensionMismatch):
        xl.span([(1, 2, 3)], 2)


def test_sum_and_intersect_examples():
    e1, e2 = xl.span([(1, 0)], 2), xl.span([(0, 1)], 2)
    assert xl.subspace_sum(e1, e2) == xl.full_space(2)
    assert xl.subspace_sum(e1, e1) == e1
    assert xl.intersect(xl.full_space(2), xl.span([(1, 1)], 2)) == xl.span([(1, 1)], 2)
    assert xl.intersect(e1, e2).dim == 0
    with pytest.raises(DimensionMismatch):
        xl.intersect(e1, xl.full_space(3))


def test_compare_examples():
    line = xl.span([(1, 0, 0)], 3)
    plane = xl.span([(1, 0, 0), (0, 1, 0)], 3)
    assert xl.compare(plane, plane) == xl.EQUAL
    assert xl.compare(line, plane) == xl.A_IN_B
    assert xl.compare(plane, line) == xl.B_IN_A
    assert xl.compare(line, xl.span([(0, 0, 1)], 3)) == xl.INCOMPARABLE


def test_rational_json_round_trip():
    assert xl.fmt_rational(Fraction(3, 1)) == "3"
    assert xl.fmt_rational(Fraction(-6, 4)) == "-3/2"
    assert xl.to_rational("-3/2") == Fraction(-3, 2)
    with pytest.raises(ParseError):
        xl.to_rational("1/0")
    with pytest.raises(ParseError):
        xl.to_rational(True)


def test_inverse_and_singular():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(Singular):
        Matrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_det_matches_permutation_sign():
    assert xl.det(Matrix.permutation((2, 1, 3))) == -1
    assert xl.det(Matrix.permutation((3, 1, 2))) == 1


@given(vectors(4), st.randoms(use_true_random=False))
def test_span_is_order_and_scale_invariant(vecs, r):
    shuffled = []
    for v in vecs:
        c = r.choice([1, -2, 3])
        shuffled.append([x * c for x in v])
    r.shuffle(shuffled)
    assert xl.span(vecs, 4) == xl.span(shuffled, 4)


@given(vectors(4), vectors(4))
def test_modular_law(a, b):
    A, B = xl.span(a, 4), xl.span(b, 4)
    assert A.dim + B.dim == xl.subspace_sum(A, B).dim + xl.intersect(A, B).dim


@given(vectors(4), vectors(4))
def test_intersection_contained_in_both(a, b):
    A, B = xl.span(a, 4), xl.span(b, 4)
    meet = xl.intersect(A, B)
    assert all(A.contains(v) and B.contains(v) for v in meet.basis)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_idempotent(rows):
    red, _ = xl.rref(Matrix.from_rows(rows))
    if red.rows:
        assert xl.rref(red)[0] == red


@given(vectors(5), st.sets(st.integers(0, 4)))
def test_vanishing_subspace_agrees_with_intersection(vecs, coords):
    V = xl.span(vecs, 5)
    keep = xl.coordinate_span([c for c in range(5) if c not in coords], 5)
    assert xl.vanishing_subspace(V, sorted(coords)) == xl.intersect(V, keep)
