"""Exact arithmetic on the dyadic hierarchy 2^-r Z and 2^-s Z^2.

Wave numbers of limit-periodic lattice structures are dyadic rationals:
m / 2^r on the line, (m, n) / 2^s in the plane.  This module keeps them as
integer tuples in a unique normal form so that hierarchy membership,
extinction tests and root-of-unity phases stay exact.  Floats appear only at
the final phase evaluation, and quarter-turn phases skip even that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

__all__ = [
    "ZERO_TOL",
    "Dyadic",
    "DyadicPoint2",
    "phase",
    "module_interval",
    "module_box",
]

# Magnitudes below this count as exact zeros in extinction tests downstream.
ZERO_TOL = 1e-10

_TWO_PI = 2.0 * math.pi
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def _strip_twos(num: int, exp: int) -> tuple[int, int]:
    if num == 0:
        return 0, 0
    while exp > 0 and num % 2 == 0:
        num //= 2
        exp -= 1
    return num, exp


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """m / 2^r in normal form: r == 0, or r >= 1 with m odd.

    Construct through :meth:`of` unless the pair is already normalised; the
    constructor rejects non-normal pairs rather than silently fixing them,
    so equality of values and equality of representations coincide.
    """

    m: int
    r: int = 0

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError(f"negative denominator exponent: {self.r}")
        if self.r > 0 and self.m % 2 == 0:
            raise ValueError(f"{self.m}/2^{self.r} is not in normal form")

    @classmethod
    def of(cls, num: int, den_exp: int = 0) -> "Dyadic":
        """Normalise num / 2^den_exp."""
        if den_exp < 0:
            raise ValueError(f"negative denominator exponent: {den_exp}")
        return cls(*_strip_twos(num, den_exp))

    @property
    def value(self) -> Fraction:
        return Fraction(self.m, 1 << self.r)

    def __float__(self) -> float:
        return self.m / (1 << self.r)

    def __bool__(self) -> bool:
        return self.m != 0

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.r)

    def __add__(self, other: "Dyadic | int") -> "Dyadic":
        if isinstance(other, int):
            other = Dyadic(other, 0)
        if not isinstance(other, Dyadic):
            return NotImplemented
        r = max(self.r, other.r)
        num = (self.m << (r - self.r)) + (other.m << (r - other.r))
        return Dyadic.of(num, r)

    __radd__ = __add__

    def __sub__(self, other: "Dyadic | int") -> "Dyadic":
        if isinstance(other, int):
            other = Dyadic(other, 0)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "Dyadic":
        return (-self) + other

    def __mul__(self, factor: int) -> "Dyadic":
        if not isinstance(factor, int):
            return NotImplemented
        return Dyadic.of(self.m * factor, self.r)

    __rmul__ = __mul__

    def __lt__(self, other: "Dyadic") -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.m << other.r < other.m << self.r

    def __str__(self) -> str:
        return str(self.m) if self.r == 0 else f"{self.m}/{1 << self.r}"


@dataclass(frozen=True)
class DyadicPoint2:
    """(m, n) / 2^s in normal form: s == 0, or s >= 1 with m, n not both even."""

    m: int
    n: int
    s: int = 0

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError(f"negative denominator exponent: {self.s}")
        if self.s > 0 and self.m % 2 == 0 and self.n % 2 == 0:
            raise ValueError(f"({self.m},{self.n})/2^{self.s} is not in normal form")

    @classmethod
    def of(cls, mx: int, ny: int, den_exp: int = 0) -> "DyadicPoint2":
        """Normalise (mx, ny) / 2^den_exp."""
        if den_exp < 0:
            raise ValueError(f"negative denominator exponent: {den_exp}")
        while den_exp > 0 and mx % 2 == 0 and ny % 2 == 0:
            mx //= 2
            ny //= 2
            den_exp -= 1
        if den_exp == 0:
            return cls(mx, ny, 0)
        return cls(mx, ny, den_exp)

    @property
    def x(self) -> Dyadic:
        return Dyadic.of(self.m, self.s)

    @property
    def y(self) -> Dyadic:
        return Dyadic.of(self.n, self.s)

    @property
    def value(self) -> tuple[Fraction, Fraction]:
        den = 1 << self.s
        return Fraction(self.m, den), Fraction(self.n, den)

    def __neg__(self) -> "DyadicPoint2":
        return DyadicPoint2(-self.m, -self.n, self.s)

    def __add__(self, other: "DyadicPoint2 | tuple[int, int]") -> "DyadicPoint2":
        if isinstance(other, tuple):
            other = DyadicPoint2(other[0], other[1], 0)
        if not isinstance(other, DyadicPoint2):
            return NotImplemented
        s = max(self.s, other.s)
        mx = (self.m << (s - self.s)) + (other.m << (s - other.s))
        ny = (self.n << (s - self.s)) + (other.n << (s - other.s))
        return DyadicPoint2.of(mx, ny, s)

    __radd__ = __add__

    def __sub__(self, other: "DyadicPoint2 | tuple[int, int]") -> "DyadicPoint2":
        if isinstance(other, tuple):
            other = DyadicPoint2(other[0], other[1], 0)
        if not isinstance(other, DyadicPoint2):
            return NotImplemented
        return self + (-other)

    def dot(self, step: tuple[int, int]) -> Dyadic:
        """Exact inner product with an integer vector."""
        return Dyadic.of(self.m * step[0] + self.n * step[1], self.s)

    def map_ints(self, a: int, b: int, c: int, d: int) -> "DyadicPoint2":
        """Apply the integer matrix [[a, b], [c, d]] to the point."""
        return DyadicPoint2.of(a * self.m + b * self.n, c * self.m + d * self.n, self.s)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def phase(t: Dyadic) -> complex:
    """e^{2 pi i t}, the 2^r-th root of unity indexed by m mod 2^r.

    Quarter-turn denominators (r <= 2) return exact unit values, so tests
    against 0, +-1 and +-i introduce no trigonometric rounding at all.
    """
    if t.r <= 2:
        return _QUARTER_TURNS[(t.m << (2 - t.r)) & 3]
    den = 1 << t.r
    angle = _TWO_PI * ((t.m % den) / den)
    return complex(math.cos(angle), math.sin(angle))


def _axis_indices(lo: Fraction, hi: Fraction, den: int, include_hi: bool) -> range:
    first = math.ceil(lo * den)
    last = math.floor(hi * den)
    if not include_hi and Fraction(last, den) == hi:
        last -= 1
    return range(first, last + 1)


def module_interval(r_max: int, lo, hi, *, include_hi: bool = True) -> list[Dyadic]:
    """Normal-form points m / 2^r with r <= r_max in [lo, hi], ascending.

    Pass ``include_hi=False`` for the half-open interval [lo, hi).  Bounds
    may be ints, floats or Fractions; they are compared exactly.
    """
    if r_max < 0:
        raise ValueError(f"negative denominator cutoff: {r_max}")
    flo, fhi = Fraction(lo), Fraction(hi)
    if flo > fhi:
        raise ValueError(f"empty interval: [{flo}, {fhi}]")
    points = []
    for r in range(r_max + 1):
        den = 1 << r
        for m in _axis_indices(flo, fhi, den, include_hi):
            if r > 0 and m % 2 == 0:
                continue
            points.append(Dyadic(m, r))
    points.sort()
    return points


def module_box(
    s_max: int,
    x_bounds: tuple,
    y_bounds: tuple | None = None,
    *,
    include_hi: bool = True,
) -> list[DyadicPoint2]:
    """Normal-form points (m, n) / 2^s with s <= s_max in a rectangle.

    Bounds are (lo, hi) per axis; ``y_bounds`` defaults to ``x_bounds``.
    Points come back sorted lexicographically by (x value, y value).
    """
    if s_max < 0:
        raise ValueError(f"negative denominator cutoff: {s_max}")
    if y_bounds is None:
        y_bounds = x_bounds
    fxlo, fxhi = Fraction(x_bounds[0]), Fraction(x_bounds[1])
    fylo, fyhi = Fraction(y_bounds[0]), Fraction(y_bounds[1])
    if fxlo > fxhi or fylo > fyhi:
        raise ValueError("empty box")
    points = []
    for s in range(s_max + 1):
        den = 1 << s
        ys = list(_axis_indices(fylo, fyhi, den, include_hi))
        for m in _axis_indices(fxlo, fxhi, den, include_hi):
            for n in ys:
                if s > 0 and m % 2 == 0 and n % 2 == 0:
                    continue
                points.append(DyadicPoint2(m, n, s))
    points.sort(key=lambda p: p.value)
    return points
