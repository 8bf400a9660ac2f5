import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from curvecell.curve_core import (
    DyadicSquare,
    QuarticInterval,
    UnitPoint,
    interval_of,
    interval_parent,
    square_center,
    square_parent,
    squares_adjacent,
)


@pytest.mark.parametrize(
    "t, k, index",
    [(0, 3, 0), (1, 2, 15), (0.3, 2, 4), (Fraction(1, 4), 1, 1), (Fraction(1, 4), 2, 4)],
)
def test_interval_of(t, k, index):
    assert interval_of(t, k) == QuarticInterval(k, index)


def test_interval_of_example_bounds():
    iv = interval_of(0.3, 2)
    assert (iv.left, iv.right) == (Fraction(4, 16), Fraction(5, 16))


@pytest.mark.parametrize("t, k", [(-0.1, 2), (1.5, 2), (0.5, 32)])
def test_interval_of_rejects(t, k):
    with pytest.raises(ValueError):
        interval_of(t, k)


def test_interval_parent_examples():
    assert interval_parent(QuarticInterval(1, 3)) == QuarticInterval(0, 0)
    assert interval_parent(QuarticInterval(2, 13)) == QuarticInterval(1, 3)
    assert interval_parent(QuarticInterval(3, 0)) == QuarticInterval(2, 0)
    with pytest.raises(ValueError):
        interval_parent(QuarticInterval(0, 0))


def test_square_parent_examples():
    assert square_parent(DyadicSquare(1, 1, 0)) == DyadicSquare(0, 0, 0)
    assert square_parent(DyadicSquare(3, 5, 6)) == DyadicSquare(2, 2, 3)
    assert square_parent(DyadicSquare(2, 0, 3)) == DyadicSquare(1, 0, 1)
    with pytest.raises(ValueError):
        square_parent(DyadicSquare(0, 0, 0))


def test_squares_adjacent_examples():
    assert squares_adjacent(DyadicSquare(1, 0, 0), DyadicSquare(1, 0, 1))
    assert not squares_adjacent(DyadicSquare(1, 0, 0), DyadicSquare(1, 1, 1))
    assert not squares_adjacent(DyadicSquare(2, 1, 2), DyadicSquare(2, 3, 2))
    with pytest.raises(ValueError):
        squares_adjacent(DyadicSquare(1, 0, 0), DyadicSquare(2, 0, 0))


def test_square_center_examples():
    assert square_center(DyadicSquare(0, 0, 0)) == UnitPoint(0.5, 0.5)
    assert square_center(DyadicSquare(1, 1, 0)) == UnitPoint(0.75, 0.25)
    assert square_center(DyadicSquare(2, 0, 3)) == UnitPoint(0.125, 0.875)


def test_type_invariants():
    with pytest.raises(ValueError):
        QuarticInterval(2, 16)
    with pytest.raises(ValueError):
        QuarticInterval(32, 0)
    with pytest.raises(ValueError):
        DyadicSquare(1, 2, 0)
    with pytest.raises(ValueError):
        UnitPoint(1.5, 0)


def test_children_have_parent():
    for k in range(9):
        for i in range(0, 4**k, max(1, 4**k // 512)):
            iv = QuarticInterval(k, i)
            for child in iv.children():
                assert interval_parent(child) == iv


def test_chain_property_dense_sample():
    rng = random.Random(1)
    samples = [rng.random() for _ in range(500)] + [j / 4**6 for j in range(4**6 + 1)]
    for t in samples:
        prev = interval_of(t, 0)
        for k in range(1, 13):
            cur = interval_of(t, k)
            assert prev.contains(cur)
            assert cur.left <= Fraction(t) <= cur.right
            prev = cur


def test_measure_bookkeeping():
    for k in range(12):
        assert QuarticInterval(k, 0).length == DyadicSquare(k, 0, 0).area == Fraction(1, 4**k)


squares = st.integers(0, 6).flatmap(
    lambda k: st.tuples(st.just(k), st.integers(0, 2**k - 1), st.integers(0, 2**k - 1))
)


@given(squares, squares)
def test_adjacency_symmetric_irreflexive(a, b):
    sa = DyadicSquare(*a)
    assert not squares_adjacent(sa, sa)
    if a[0] == b[0]:
        sb = DyadicSquare(*b)
        assert squares_adjacent(sa, sb) == squares_adjacent(sb, sa)


def test_digits_are_base4_prefix():
    iv = QuarticInterval(3, 0b10_01_11)
    assert iv.digits() == (2, 1, 3)
