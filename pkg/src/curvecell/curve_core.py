"""Quartic intervals of [0, 1] and dyadic squares of [0, 1]^2.

Both are closed sets, but they are stored as integer (generation, index)
pairs. Real endpoints are derived on demand so that containment never
depends on floating-point rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

MAX_GENERATION = 31


def _check_generation(k: int) -> None:
    if not 0 <= k <= MAX_GENERATION:
        raise ValueError(f"generation must be in [0, {MAX_GENERATION}], got {k}")


@dataclass(frozen=True, order=True)
class QuarticInterval:
    """The closed interval [index / 4**generation, (index + 1) / 4**generation]."""

    generation: int
    index: int

    def __post_init__(self) -> None:
        _check_generation(self.generation)
        if not 0 <= self.index < 4**self.generation:
            raise ValueError(
                f"index {self.index} out of range for generation {self.generation}"
            )

    @property
    def left(self) -> Fraction:
        return Fraction(self.index, 4**self.generation)

    @property
    def right(self) -> Fraction:
        return Fraction(self.index + 1, 4**self.generation)

    @property
    def length(self) -> Fraction:
        return Fraction(1, 4**self.generation)

    def digits(self) -> tuple[int, ...]:
        """Base-4 digits a_1..a_k of the index, most significant first."""
        k = self.generation
        return tuple((self.index >> (2 * (k - 1 - j))) & 3 for j in range(k))

    def children(self) -> tuple[QuarticInterval, ...]:
        return tuple(
            QuarticInterval(self.generation + 1, 4 * self.index + d) for d in range(4)
        )

    def contains(self, other: QuarticInterval) -> bool:
        """True if ``other`` (same or finer generation) lies inside this interval."""
        shift = other.generation - self.generation
        if shift < 0:
            return False
        return other.index >> (2 * shift) == self.index


@dataclass(frozen=True, order=True)
class DyadicSquare:
    """Closed cell (x, y) of the 2**k by 2**k grid; y grows upward."""

    generation: int
    x: int
    y: int

    def __post_init__(self) -> None:
        _check_generation(self.generation)
        n = 1 << self.generation
        if not (0 <= self.x < n and 0 <= self.y < n):
            raise ValueError(
                f"square ({self.x}, {self.y}) out of range for generation {self.generation}"
            )

    @property
    def side(self) -> Fraction:
        return Fraction(1, 1 << self.generation)

    @property
    def area(self) -> Fraction:
        return Fraction(1, 4**self.generation)

    def bounds(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(x0, y0, x1, y1) as exact fractions."""
        n = 1 << self.generation
        return (
            Fraction(self.x, n),
            Fraction(self.y, n),
            Fraction(self.x + 1, n),
            Fraction(self.y + 1, n),
        )

    def children(self) -> tuple[DyadicSquare, ...]:
        k = self.generation + 1
        x, y = 2 * self.x, 2 * self.y
        return (
            DyadicSquare(k, x, y),
            DyadicSquare(k, x, y + 1),
            DyadicSquare(k, x + 1, y + 1),
            DyadicSquare(k, x + 1, y),
        )

    def contains(self, other: DyadicSquare) -> bool:
        shift = other.generation - self.generation
        if shift < 0:
            return False
        return (other.x >> shift, other.y >> shift) == (self.x, self.y)


@dataclass(frozen=True)
class UnitPoint:
    x: float | Fraction
    y: float | Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.x <= 1 and 0 <= self.y <= 1):
            raise ValueError(f"point ({self.x}, {self.y}) outside the unit square")

    def __iter__(self):
        yield self.x
        yield self.y

    def distance(self, other: UnitPoint) -> float:
        return math.hypot(float(self.x) - float(other.x), float(self.y) - float(other.y))


def interval_of(t: Real, k: int) -> QuarticInterval:
    """Generation-k quartic interval containing ``t``.

    An interior boundary point i/4**k is assigned to the interval it starts
    (index i); t = 1 goes to the last interval. Repeated calls with
    increasing k therefore walk one canonical chain.
    """
    _check_generation(k)
    if not 0 <= t <= 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    n = 4**k
    if isinstance(t, float):
        # scaling by a power of two is exact for doubles, so floor is exact too
        i = math.floor(t * n)
    else:
        i = math.floor(Fraction(t) * n)
    return QuarticInterval(k, min(i, n - 1))


def interval_parent(interval: QuarticInterval) -> QuarticInterval:
    if interval.generation == 0:
        raise ValueError("generation-0 interval has no parent")
    return QuarticInterval(interval.generation - 1, interval.index >> 2)


def square_parent(square: DyadicSquare) -> DyadicSquare:
    if square.generation == 0:
        raise ValueError("generation-0 square has no parent")
    return DyadicSquare(square.generation - 1, square.x >> 1, square.y >> 1)


def squares_adjacent(a: DyadicSquare, b: DyadicSquare) -> bool:
    """Edge adjacency. Squares touching only at a corner are not adjacent."""
    if a.generation != b.generation:
        raise ValueError(
            f"cannot compare squares of generations {a.generation} and {b.generation}"
        )
    return abs(a.x - b.x) + abs(a.y - b.y) == 1


def square_center(square: DyadicSquare) -> UnitPoint:
    # dyadic rationals with k <= 31 are exact as doubles
    n = float(1 << square.generation)
    return UnitPoint((square.x + 0.5) / n, (square.y + 0.5) / n)
