"""The Hilbert dyadic correspondence and its finite-resolution curve.

phi sends the generation-k quartic interval with index i to a dyadic square
by reading i in base 4, one digit per generation, and walking a table of four
orientation states. Each state fixes the order in which the four quadrants of
the current square are visited and the state used inside each quadrant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .curve_core import (
    DyadicSquare,
    QuarticInterval,
    UnitPoint,
    _check_generation,
    interval_of,
    square_center,
)

MAX_TRACE_GENERATION = 16

# quadrant name -> (column bit, row bit)
QUADRANTS = {"BL": (0, 0), "TL": (0, 1), "TR": (1, 1), "BR": (1, 0)}


@dataclass(frozen=True)
class OrientationState:
    tag: str
    visit_order: tuple[str, str, str, str]
    child_states: tuple[str, str, str, str]


# A is the figure's pattern; B is its transpose, D its anti-transpose and
# C the half turn. A child state is the parent symmetry composed with the
# A-pattern child symmetry.
STATES: dict[str, OrientationState] = {
    "A": OrientationState("A", ("BL", "TL", "TR", "BR"), ("B", "A", "A", "D")),
    "B": OrientationState("B", ("BL", "BR", "TR", "TL"), ("A", "B", "B", "C")),
    "C": OrientationState("C", ("TR", "BR", "BL", "TL"), ("D", "C", "C", "B")),
    "D": OrientationState("D", ("TR", "TL", "BL", "BR"), ("C", "D", "D", "A")),
}
ROOT_STATE = "A"

# Flattened lookups: state -> digit -> (quadrant bits, next state), and the inverse.
_FORWARD = {
    tag: tuple(
        (QUADRANTS[q], child) for q, child in zip(st.visit_order, st.child_states)
    )
    for tag, st in STATES.items()
}
_BACKWARD = {
    tag: {QUADRANTS[q]: (d, child) for d, (q, child) in enumerate(zip(st.visit_order, st.child_states))}
    for tag, st in STATES.items()
}


def phi(interval: QuarticInterval) -> DyadicSquare:
    k = interval.generation
    i = interval.index
    state = ROOT_STATE
    x = y = 0
    for shift in range(2 * (k - 1), -1, -2):
        (qx, qy), state = _FORWARD[state][(i >> shift) & 3]
        x = (x << 1) | qx
        y = (y << 1) | qy
    return DyadicSquare(k, x, y)


def phi_inverse(square: DyadicSquare) -> QuarticInterval:
    k = square.generation
    state = ROOT_STATE
    i = 0
    for bit in range(k - 1, -1, -1):
        digit, state = _BACKWARD[state][((square.x >> bit) & 1, (square.y >> bit) & 1)]
        i = (i << 2) | digit
    return QuarticInterval(k, i)


def hilbert_index(k: int, x: int, y: int) -> int:
    return phi_inverse(DyadicSquare(k, x, y)).index


def hilbert_square(k: int, index: int) -> tuple[int, int]:
    s = phi(QuarticInterval(k, index))
    return s.x, s.y


def point_at(t: Real, k: int) -> UnitPoint:
    """Generation-k approximation of the Hilbert curve at parameter ``t``.

    Successive approximations differ by at most sqrt(2) * 2**-k since the
    finer square sits inside the coarser one.
    """
    return square_center(phi(interval_of(t, k)))


def trace(k: int) -> list[UnitPoint]:
    if not 0 <= k <= MAX_TRACE_GENERATION:
        raise ValueError(f"trace generation must be in [0, {MAX_TRACE_GENERATION}], got {k}")
    return [square_center(phi(QuarticInterval(k, i))) for i in range(4**k)]


_TAGS = tuple(STATES)
# flattened as state * 4 + digit
_FWD_QX = np.array([q[0] for t in _TAGS for q, _ in _FORWARD[t]], dtype=np.int64)
_FWD_QY = np.array([q[1] for t in _TAGS for q, _ in _FORWARD[t]], dtype=np.int64)
_FWD_NEXT = np.array([4 * _TAGS.index(c) for t in _TAGS for _, c in _FORWARD[t]], dtype=np.int64)


def phi_many(k: int, indices) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised phi: square columns and rows for an array of generation-k indices."""
    _check_generation(k)
    idx = np.asarray(indices, dtype=np.int64)
    state = np.full(idx.shape, 4 * _TAGS.index(ROOT_STATE), dtype=np.int64)
    x = np.zeros(idx.shape, dtype=np.int64)
    y = np.zeros(idx.shape, dtype=np.int64)
    for shift in range(2 * (k - 1), -1, -2):
        slot = state + ((idx >> shift) & 3)
        x <<= 1
        x |= _FWD_QX[slot]
        y <<= 1
        y |= _FWD_QY[slot]
        state = _FWD_NEXT[slot]
    return x, y


def _max_quotient(k: int, i: np.ndarray, j: np.ndarray) -> float:
    if i.size == 0:
        return 0.0
    xi, yi = phi_many(k, i)
    xj, yj = phi_many(k, j)
    # centres differ by whole cells; scale cell units and index units together
    dist = np.hypot((xi - xj).astype(float), (yi - yj).astype(float)) / (1 << k)
    return float(np.max(dist / np.sqrt(np.abs(i - j) / 4.0**k)))


def holder_sup(k: int, pairs: int, seed: int = 0) -> float:
    """Largest observed ||P_k(t) - P_k(s)|| / |t - s|**0.5.

    Parameters are taken at generation-k interval midpoints, where P_k is
    exactly the square center; pairs straddling a single cell boundary would
    otherwise blow up the quotient of the step-function approximant. The
    sample is every consecutive midpoint pair, ``pairs`` uniform random
    pairs, and ``pairs`` pairs with log-uniform separation so that short
    distances are represented too. Generation 1 is enumerated outright.
    """
    if not 0 <= k <= MAX_TRACE_GENERATION:
        raise ValueError(f"generation must be in [0, {MAX_TRACE_GENERATION}], got {k}")
    n = 4**k
    if n == 1:
        return 0.0
    if n == 4:
        i, j = np.triu_indices(4, 1)
        return _max_quotient(k, i.astype(np.int64), j.astype(np.int64))
    rng = np.random.default_rng(seed)
    x, y = phi_many(k, np.arange(n))
    # |t - s| = 4**-k and each step spans 2**-k per cell, so the quotient is the step in cells
    best = float(np.max(np.hypot(np.diff(x), np.diff(y))))
    del x, y
    i = rng.integers(0, n, pairs)
    j = rng.integers(0, n, pairs)
    keep = i != j
    best = max(best, _max_quotient(k, i[keep], j[keep]))
    gap = np.maximum(1, (float(n) ** rng.random(pairs)).astype(np.int64))
    gap = np.minimum(gap, n - 1)
    i = (rng.random(pairs) * (n - gap)).astype(np.int64)
    best = max(best, _max_quotient(k, i, i + gap))
    return best


def _aligned_pieces(lo: int, hi: int, k: int) -> list[QuarticInterval]:
    """Split the index range [lo, hi) of generation k into maximal quartic intervals."""
    pieces = []
    while lo < hi:
        g = k
        while g > 0 and lo % 4 ** (k - g + 1) == 0 and lo + 4 ** (k - g + 1) <= hi:
            g -= 1
        pieces.append(QuarticInterval(g, lo // 4 ** (k - g)))
        lo += 4 ** (k - g)
    return pieces


def measure_of_image(a: Real, b: Real, k: int) -> Fraction:
    """Area of the union of phi(I) over generation-k intervals I inside [a, b].

    The range is cut into maximal quartic intervals; their squares are checked
    to be pairwise non-overlapping before their areas are summed, so the
    result is a genuine union area rather than a count.
    """
    _check_generation(k)
    a, b = Fraction(a), Fraction(b)
    if not 0 <= a < b <= 1:
        raise ValueError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
    n = 4**k
    lo, hi = a * n, b * n
    if lo.denominator != 1 or hi.denominator != 1:
        raise ValueError(f"endpoints must be multiples of 4**-{k}")
    squares = [phi(p) for p in _aligned_pieces(int(lo), int(hi), k)]
    for idx, s in enumerate(squares):
        for t in squares[idx + 1 :]:
            if s.contains(t) or t.contains(s):
                raise AssertionError(f"overlapping images {s} and {t}")
    return sum((s.area for s in squares), Fraction(0))
