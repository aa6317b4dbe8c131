"""Exact Clebsch-Gordan coefficients for sl(2).

Angular momenta are passed as :class:`HalfInt` (or plain ``int``/``Fraction``
values which are converted).  Internally everything is stored doubled, so
``HalfInt(1)`` is j = 1/2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactnum import ZERO, Scalar, sqrt_rational

__all__ = [
    "HalfInt",
    "half",
    "triangle_ok",
    "delta",
    "cg",
    "cg_doubled",
    "cg_top",
    "cg_lowest",
    "cg_lowest_swapped",
    "cg_highest_weight",
    "embedding_vector",
]


class HalfInt:
    """Integer or half-integer, stored as ``doubled = 2*value``."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        if not isinstance(doubled, int):
            raise TypeError("HalfInt stores an int (twice the value)")
        self.doubled = doubled

    @classmethod
    def of(cls, x) -> HalfInt:
        if isinstance(x, HalfInt):
            return x
        x2 = Fraction(x) * 2
        if x2.denominator != 1:
            raise ValueError(f"{x} is not an integer or half-integer")
        return cls(int(x2))

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __eq__(self, other) -> bool:
        if isinstance(other, HalfInt):
            return self.doubled == other.doubled
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.doubled)

    def __repr__(self) -> str:
        return f"HalfInt({self.value})"


def half(k: int) -> HalfInt:
    """``k/2`` as a :class:`HalfInt`."""
    return HalfInt(k)


def _d(x) -> int:
    return HalfInt.of(x).doubled


def _triangle_doubled(a: int, b: int, c: int) -> bool:
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def triangle_ok(j1, j2, j3) -> bool:
    """True iff j1+j2+j3 is an integer and |j1-j2| <= j3 <= j1+j2."""
    a, b, c = _d(j1), _d(j2), _d(j3)
    if min(a, b, c) < 0:
        raise ValueError(f"triangle_ok needs non-negative arguments, got {(j1, j2, j3)}")
    return _triangle_doubled(a, b, c)


@lru_cache(maxsize=None)
def _delta_sq(a: int, b: int, c: int) -> Fraction:
    if not _triangle_doubled(a, b, c):
        return Fraction(0)
    return Fraction(
        factorial((a + b - c) // 2) * factorial((a - b + c) // 2) * factorial((-a + b + c) // 2),
        factorial((a + b + c) // 2 + 1),
    )


def delta(j1, j2, j3) -> Scalar:
    """Triangle coefficient: square root of the factorial ratio, or 0."""
    a, b, c = _d(j1), _d(j2), _d(j3)
    if min(a, b, c) < 0:
        raise ValueError("delta needs non-negative arguments")
    return sqrt_rational(_delta_sq(a, b, c))


def _in_range(j: int, m: int) -> bool:
    return j >= 0 and abs(m) <= j and (j - m) % 2 == 0


@lru_cache(maxsize=200_000)
def _cg_signed_square(j1: int, m1: int, j2: int, m2: int, j3: int, m3: int) -> tuple[int, Fraction]:
    """(sign, square) of the coefficient, all arguments doubled.

    Applies the reflection identities to reach ``m3 >= 0`` and ``j1 >= j2``
    and then evaluates the factorial sum.
    """
    if m1 + m2 != m3:
        return 0, Fraction(0)
    if not (_in_range(j1, m1) and _in_range(j2, m2) and _in_range(j3, m3)):
        return 0, Fraction(0)
    if not _triangle_doubled(j1, j2, j3):
        return 0, Fraction(0)
    phase = 1 if ((j1 + j2 - j3) // 2) % 2 == 0 else -1
    if m3 < 0:
        s, q = _cg_signed_square(j1, -m1, j2, -m2, j3, -m3)
        return phase * s, q
    if j1 < j2:
        s, q = _cg_signed_square(j2, m2, j1, m1, j3, m3)
        return phase * s, q
    # integers: J1 = j1, M1 = m1 etc. but undoubled
    k1, k2, k3 = (j1 + j2 - j3) // 2, (j1 - m1) // 2, (j2 + m2) // 2
    k4, k5 = (j3 - j2 + m1) // 2, (j3 - j1 - m2) // 2
    total = Fraction(0)
    r_lo = max(0, -k4, -k5)
    r_hi = min(k1, k2, k3)
    for r in range(r_lo, r_hi + 1):
        term = Fraction(
            (-1) ** r,
            factorial(r) * factorial(k1 - r) * factorial(k2 - r) * factorial(k3 - r)
            * factorial(k4 + r) * factorial(k5 + r),
        )
        total += term
    if total == 0:
        return 0, Fraction(0)
    pref = (
        _delta_sq(j1, j2, j3)
        * (j3 + 1)
        * factorial((j1 + m1) // 2) * factorial((j1 - m1) // 2)
        * factorial((j2 + m2) // 2) * factorial((j2 - m2) // 2)
        * factorial((j3 + m3) // 2) * factorial((j3 - m3) // 2)
    )
    return (1 if total > 0 else -1), pref * total * total


def cg_doubled(j1: int, m1: int, j2: int, m2: int, j3: int, m3: int) -> Scalar:
    """CG(j1/2, m1/2; j2/2, m2/2 | j3/2, m3/2); every argument is doubled."""
    s, q = _cg_signed_square(j1, m1, j2, m2, j3, m3)
    if not s:
        return ZERO
    v = sqrt_rational(q)
    return v if s > 0 else -v


def cg(j1, m1, j2, m2, j3, m3) -> Scalar:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | j3 m3>.

    Arguments may be :class:`HalfInt`, ``int`` or ``Fraction``.  Parity
    mismatches and out-of-range projections give 0 rather than raising.
    """
    return cg_doubled(_d(j1), _d(m1), _d(j2), _d(m2), _d(j3), _d(m3))


# Closed forms for the extremal coefficients.  Weights a, b are ordinary
# highest weights (so j = a/2) and 0 <= i <= a, 0 <= j <= b.


def cg_top(a: int, b: int, i: int, j: int) -> Scalar:
    """CG(a/2, a/2-i; b/2, b/2-j | (a+b)/2, (a+b)/2-i-j)."""
    f = factorial
    return sqrt_rational(
        Fraction(f(a) * f(b) * f(a + b - i - j) * f(i + j), f(i) * f(j) * f(a + b) * f(a - i) * f(b - j))
    )


def cg_lowest(a: int, b: int, i: int, j: int) -> Scalar:
    """CG(a/2, a/2-i; b/2, j-b/2 | (a-b)/2, (a-b)/2-i+j), for a >= b and j <= i <= a-b+j."""
    if not (a >= b and 0 <= j <= i and a - b - i + j >= 0):
        return ZERO
    f = factorial
    v = sqrt_rational(
        Fraction(f(a - i) * f(i) * f(b) * f(a - b + 1), f(a + 1) * f(j) * f(b - j) * f(a - b - i + j) * f(i - j))
    )
    return -v if j % 2 else v


def cg_lowest_swapped(a: int, b: int, i: int, j: int) -> Scalar:
    """CG(a/2, i-a/2; b/2, b/2-j | (b-a)/2, (b-a)/2+i-j), for b >= a and i <= j <= b-a+i."""
    if not (b >= a and 0 <= i <= j and b - a - j + i >= 0):
        return ZERO
    f = factorial
    v = sqrt_rational(
        Fraction(f(b - j) * f(j) * f(a) * f(b - a + 1), f(b + 1) * f(i) * f(a - i) * f(b - a - j + i) * f(j - i))
    )
    # exchange phase (-1)^a times the (-1)^i of the unswapped closed form
    return -v if (a + i) % 2 else v


def cg_highest_weight(a: int, b: int, i: int, j: int) -> Scalar:
    """CG(a/2, a/2-i; b/2, b/2-j | (a+b)/2-i-j, (a+b)/2-i-j)."""
    if not (0 <= i and 0 <= j and i + j <= min(a, b)):
        return ZERO
    f = factorial
    v = sqrt_rational(
        Fraction(
            f(a + b - 2 * i - 2 * j + 1) * f(i + j) * f(a - i) * f(b - j),
            f(a + b - i - j + 1) * f(a - i - j) * f(b - i - j) * f(i) * f(j),
        )
    )
    return -v if i % 2 else v


def embedding_vector(a: int, b: int, c: int, k: int) -> dict[tuple[int, int], Scalar]:
    """Coordinates of the image of v_k^c in V(a) (x) V(b), keyed by (i, j)."""
    out: dict[tuple[int, int], Scalar] = {}
    for i in range(a + 1):
        # a/2 - i + b/2 - j = c/2 - k
        twice_j = a - 2 * i + b - c + 2 * k
        if twice_j % 2:
            continue
        j = twice_j // 2
        if 0 <= j <= b:
            v = cg_doubled(a, a - 2 * i, b, b - 2 * j, c, c - 2 * k)
            if v:
                out[(i, j)] = v
    return out
