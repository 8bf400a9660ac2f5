"""Cantor-set digit arithmetic, the Lebesgue curve, and Morton codes.

Ternary digits are extracted exactly from a Fraction. When the remainder
sequence repeats within the scan budget the expansion is known exactly
(prefix plus repeating block) and all derived values are exact rationals;
otherwise values come from a truncated expansion with error at most 2**-p.

Canonical expansion: a number whose expansion would end in ``1000...`` is
written with ``0222...`` instead, so 1/3 is 0.0222... and lies in the set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .curve_core import UnitPoint

DEFAULT_PRECISION = 32
MAX_PRECISION = 40
SCAN_DIGITS = 64


@dataclass(frozen=True)
class TernaryExpansion:
    digits: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> Fraction:
        return sum(
            (Fraction(d, 3 ** (j + 1)) for j, d in enumerate(self.digits)), Fraction(0)
        )

    def is_cantor(self) -> bool:
        return 1 not in self.digits


@dataclass(frozen=True)
class CantorGap:
    """An open middle-third interval (a, b) removed while building the Cantor set."""

    a: Fraction
    b: Fraction

    def __contains__(self, x) -> bool:
        return self.a < Fraction(x) < self.b


@dataclass(frozen=True)
class _Digits:
    prefix: tuple[int, ...]
    # repeating block; empty when the expansion was cut off at the scan budget
    cycle: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return bool(self.cycle)

    def take(self, count: int) -> tuple[int, ...]:
        out = list(self.prefix[:count])
        while len(out) < count and self.cycle:
            out.extend(self.cycle)
        if len(out) < count:
            raise ValueError("expansion shorter than requested precision")
        return tuple(out[:count])

    def all_digits(self) -> tuple[int, ...]:
        return self.prefix + self.cycle


def _as_fraction(x: Real) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"value must lie in [0, 1], got {x}")
    return x


def _expand(x: Fraction, limit: int) -> _Digits:
    # integer remainder arithmetic: x = num / den throughout
    num, den = x.numerator, x.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    while len(digits) < limit:
        if num in seen:
            start = seen[num]
            return _Digits(tuple(digits[:start]), tuple(digits[start:]))
        seen[num] = len(digits)
        num *= 3
        d = min(num // den, 2)
        num -= d * den
        if d == 1 and num == 0:
            return _Digits(tuple(digits) + (0,), (2,))
        digits.append(d)
    return _Digits(tuple(digits), ())


def _bits_to_int(bits) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def _binary_value(prefix, cycle) -> Fraction:
    """Value of 0.prefix(cycle)(cycle)... in base 2."""
    head = Fraction(_bits_to_int(prefix), 1 << len(prefix))
    if not cycle:
        return head
    block = _bits_to_int(cycle)
    return head + Fraction(block, ((1 << len(cycle)) - 1) << len(prefix))


def ternary_expansion(x: Real, p: int = DEFAULT_PRECISION) -> TernaryExpansion:
    """First ``p`` canonical ternary digits of ``x``."""
    d = _expand(_as_fraction(x), max(p, SCAN_DIGITS))
    return TernaryExpansion(d.take(p))


def gap_of(x: Real, max_digits: int = SCAN_DIGITS) -> CantorGap | None:
    """The removed interval containing ``x``, or None if ``x`` is in the Cantor set.

    Membership is exact when the expansion repeats within ``max_digits``
    digits, and holds to that many digits otherwise.
    """
    d = _expand(_as_fraction(x), max_digits)
    digits = d.all_digits()
    if 1 not in digits:
        return None
    m = digits.index(1) + 1
    base = sum((Fraction(dj, 3 ** (j + 1)) for j, dj in enumerate(digits[: m - 1])), Fraction(0))
    return CantorGap(base + Fraction(1, 3**m), base + Fraction(2, 3**m))


def _check_precision(p: int) -> None:
    if not 1 <= p <= MAX_PRECISION:
        raise ValueError(f"precision must be in [1, {MAX_PRECISION}], got {p}")


def cantor_lebesgue(x: Real, p: int = DEFAULT_PRECISION) -> Fraction:
    """Cantor-Lebesgue function L, constant on each removed gap."""
    _check_precision(p)
    x = _as_fraction(x)
    limit = max(p, SCAN_DIGITS)
    gap = gap_of(x, limit)
    if gap is not None:
        x = gap.a
    d = _expand(x, limit)
    if d.exact:
        return _binary_value([t // 2 for t in d.prefix], [t // 2 for t in d.cycle])
    return _binary_value([t // 2 for t in d.take(p)], ())


def _split(seq: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return seq[0::2], seq[1::2]


def lebesgue_point(x: Real, p: int = DEFAULT_PRECISION) -> UnitPoint:
    """Lebesgue's curve on the Cantor set: alternate halved digits go to x and y."""
    _check_precision(p)
    x = _as_fraction(x)
    d = _expand(x, max(2 * p, SCAN_DIGITS))
    if d.exact:
        if 1 in d.all_digits():
            raise ValueError(f"{x} is not in the Cantor set")
        prefix, cycle = d.prefix, d.cycle
        if len(prefix) % 2:
            prefix, cycle = prefix + cycle[:1], cycle[1:] + cycle[:1]
        if len(cycle) % 2:
            cycle = cycle + cycle
        bits_p = [t // 2 for t in prefix]
        bits_c = [t // 2 for t in cycle]
        (px, py), (cx, cy) = _split(tuple(bits_p)), _split(tuple(bits_c))
        return UnitPoint(_binary_value(px, cx), _binary_value(py, cy))
    digits = d.take(2 * p)
    if 1 in digits:
        raise ValueError(f"{x} is not in the Cantor set to {2 * p} ternary digits")
    bx, by = _split(tuple(t // 2 for t in digits))
    return UnitPoint(_binary_value(bx, ()), _binary_value(by, ()))


def lebesgue_extended(t: Real, p: int = DEFAULT_PRECISION) -> UnitPoint:
    """Lebesgue's space-filling curve: ``lebesgue_point`` bridged linearly across gaps."""
    _check_precision(p)
    t = _as_fraction(t)
    gap = gap_of(t, max(2 * p, SCAN_DIGITS))
    if gap is None:
        return lebesgue_point(t, p)
    lo = lebesgue_point(gap.a, p)
    hi = lebesgue_point(gap.b, p)
    w = (t - gap.a) / (gap.b - gap.a)
    return UnitPoint(lo.x + w * (hi.x - lo.x), lo.y + w * (hi.y - lo.y))


def cantor_grid_parameter(index: int, k: int) -> Fraction:
    """Cantor point whose 2k ternary digits are twice the bits of ``index``.

    Under ``lebesgue_point`` it lands on the lower-left corner of the
    Z-order cell ``index`` of the 2**k grid.
    """
    if not 0 <= index < 4**k:
        raise ValueError(f"index {index} out of range for generation {k}")
    return sum(
        (Fraction(2 * ((index >> (2 * k - 1 - j)) & 1), 3 ** (j + 1)) for j in range(2 * k)),
        Fraction(0),
    )


def _check_morton(n: int, bits: int) -> None:
    if n < 1 or bits < 0 or n * bits > 63:
        raise ValueError(f"need n >= 1 and n * bits <= 63, got n={n}, bits={bits}")


def morton_encode(coords, bits: int) -> int:
    """Interleave coordinate bits; coordinate 0 takes the high bit of each group."""
    coords = list(coords)
    n = len(coords)
    _check_morton(n, bits)
    for c in coords:
        if not 0 <= c < (1 << bits):
            raise ValueError(f"coordinate {c} does not fit in {bits} bits")
    code = 0
    for b in range(bits - 1, -1, -1):
        for c in coords:
            code = (code << 1) | ((c >> b) & 1)
    return code


def morton_decode(code: int, n: int, bits: int) -> list[int]:
    _check_morton(n, bits)
    if not 0 <= code < (1 << (n * bits)):
        raise ValueError(f"code {code} out of range for n={n}, bits={bits}")
    coords = [0] * n
    for b in range(bits):
        for dim in range(n):
            shift = b * n + (n - 1 - dim)
            coords[dim] |= ((code >> shift) & 1) << b
    return coords
