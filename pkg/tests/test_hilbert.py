import math
import random
from fractions import Fraction

import numpy as np
import pytest

from curvecell.curve_core import (
    DyadicSquare,
    QuarticInterval,
    UnitPoint,
    interval_parent,
    square_parent,
    squares_adjacent,
)
from curvecell.hilbert import (
    STATES,
    holder_sup,
    measure_of_image,
    phi,
    phi_inverse,
    phi_many,
    point_at,
    trace,
)
from oracles import correspondences

# frozen from oracles.correspondences(2); exactly one ordering survives
GEN2 = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 2), (0, 3), (1, 3), (1, 2),
        (2, 2), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1), (2, 0), (3, 0)]


def squares_of(k):
    return [(s.x, s.y) for s in (phi(QuarticInterval(k, i)) for i in range(4**k))]


def test_root_state_row():
    a = STATES["A"]
    assert a.visit_order == ("BL", "TL", "TR", "BR")
    assert a.child_states == ("B", "A", "A", "D")


def test_phi_examples():
    assert squares_of(0) == [(0, 0)]
    assert squares_of(1) == [(0, 0), (0, 1), (1, 1), (1, 0)]
    assert squares_of(2) == GEN2


def test_oracle_frozen_values_still_hold():
    assert correspondences(2) == [GEN2]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_table_matches_constraint_search(k):
    assert correspondences(k) == [squares_of(k)]


def test_phi_inverse_examples():
    assert phi_inverse(DyadicSquare(1, 0, 1)) == QuarticInterval(1, 1)
    assert phi_inverse(DyadicSquare(0, 0, 0)) == QuarticInterval(0, 0)
    assert phi_inverse(DyadicSquare(2, 3, 0)) == QuarticInterval(2, 15)


def test_phi_many_matches_phi():
    for k in (0, 1, 5, 9):
        idx = np.arange(4**k) if k < 9 else np.random.default_rng(0).integers(0, 4**k, 2000)
        xs, ys = phi_many(k, idx)
        for i, x, y in zip(idx[:3000], xs, ys):
            s = phi(QuarticInterval(k, int(i)))
            assert (s.x, s.y) == (x, y)


def test_high_generation_round_trip():
    rng = random.Random(3)
    for _ in range(500):
        k = rng.randint(20, 31)
        iv = QuarticInterval(k, rng.randrange(4**k))
        assert phi_inverse(phi(iv)) == iv
        s = phi(iv)
        assert square_parent(s) == phi(interval_parent(iv))


@pytest.mark.parametrize(
    "t, k, expected",
    [
        (0, 3, (1 / 16, 1 / 16)),
        (1, 3, (1 - 1 / 16, 1 / 16)),
        (0.5, 2, (0.625, 0.625)),
        (Fraction(1, 2), 2, (0.625, 0.625)),
    ],
)
def test_point_at_examples(t, k, expected):
    assert tuple(point_at(t, k)) == expected


def test_point_at_rejects():
    with pytest.raises(ValueError):
        point_at(1.2, 3)


def test_trace_examples():
    assert [tuple(p) for p in trace(1)] == [(0.25, 0.25), (0.25, 0.75), (0.75, 0.75), (0.75, 0.25)]
    assert [tuple(p) for p in trace(0)] == [(0.5, 0.5)]
    assert [tuple(p) for p in trace(2)] == [((x + 0.5) / 4, (y + 0.5) / 4) for x, y in GEN2]
    with pytest.raises(ValueError):
        trace(17)


@pytest.mark.parametrize("k", [1, 3, 6])
def test_trace_steps_linf(k):
    pts = trace(k)
    for p, q in zip(pts, pts[1:]):
        assert max(abs(p.x - q.x), abs(p.y - q.y)) == 2.0**-k


def test_holder_small_generations():
    assert holder_sup(0, 100) == 0.0
    # brute force over the six midpoint pairs of generation 1
    pts = trace(1)
    brute = max(
        pts[i].distance(pts[j]) / math.sqrt((j - i) / 4) for i in range(4) for j in range(i + 1, 4)
    )
    assert brute == pytest.approx(1.0)
    assert holder_sup(1, 100) == pytest.approx(brute)


def test_holder_bound_small_k_exhaustive():
    # every pair at k = 4 against the brute force
    pts = trace(4)
    n = len(pts)
    brute = max(
        pts[i].distance(pts[j]) / math.sqrt((j - i) / n) for i in range(n) for j in range(i + 1, n)
    )
    assert brute <= 3.0
    assert holder_sup(4, 20000) <= brute + 1e-12


@pytest.mark.parametrize(
    "a, b, k, area",
    [
        (0, 1, 3, Fraction(1)),
        (Fraction(1, 4), Fraction(1, 2), 2, Fraction(1, 4)),
        (Fraction(3, 16), Fraction(9, 16), 2, Fraction(6, 16)),
    ],
)
def test_measure_examples(a, b, k, area):
    assert measure_of_image(a, b, k) == area


def test_measure_rejects_unaligned():
    with pytest.raises(ValueError):
        measure_of_image(Fraction(1, 5), Fraction(1, 2), 2)
    with pytest.raises(ValueError):
        measure_of_image(Fraction(1, 2), Fraction(1, 4), 2)


def test_refinement_bound():
    rng = random.Random(5)
    for _ in range(2000):
        t = rng.random()
        for k in range(12):
            d = point_at(t, k).distance(point_at(t, k + 1))
            assert d <= math.sqrt(2) * 2.0**-k


def test_continuity_at_boundaries():
    rng = random.Random(7)
    for _ in range(200):
        k = rng.randint(1, 5)
        t = Fraction(rng.randrange(1, 4**k), 4**k)
        for m in range(k + 1, k + 10):
            eps = Fraction(1, 2 * 4**m)
            d = point_at(t - eps, m).distance(point_at(t, m))
            assert d <= math.sqrt(2) * 2.0 ** (-m + 1)


def test_adjacent_generation_consistency():
    # every consecutive pair at k = 5 is edge-adjacent (spot check of the acceptance sweep)
    seq = [phi(QuarticInterval(5, i)) for i in range(4**5)]
    assert all(squares_adjacent(a, b) for a, b in zip(seq, seq[1:]))
