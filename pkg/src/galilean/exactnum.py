"""Exact arithmetic in the field generated over Q by square roots of integers.

A :class:`Scalar` is a finite sum ``q_1*sqrt(r_1) + ... + q_k*sqrt(r_k)`` with
rational ``q_i`` and distinct squarefree radicands ``r_i``.  Because distinct
squarefree radicands are linearly independent over Q, the term map is a
canonical form and equality is structural.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "sqrt_rational",
    "squarefree_split",
    "parse_scalar",
    "TRIAL_DIVISION_BOUND",
]

TRIAL_DIVISION_BOUND = 10**6

Number = Union[int, Fraction, "Scalar"]


@lru_cache(maxsize=65536)
def squarefree_split(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree.

    Trial division runs up to ``bound``; a cofactor left over after that is
    accepted when it is provably squarefree (a perfect square is detected
    separately).
    """
    if n <= 0:
        raise ValueError(f"squarefree_split needs a positive integer, got {n}")
    s, r = 1, 1
    d = 2
    while d * d <= n and d <= bound:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    if n > 1:
        root = math.isqrt(n)
        if root * root == n:
            s *= root
        elif d * d <= n and n >= bound**3:
            raise ValueError(
                f"cannot certify squarefree part of {n} within trial bound {bound}"
            )
        else:
            r *= n
    return s, r


@lru_cache(maxsize=4096)
def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Scalar:
    """Element of Q(sqrt(2), sqrt(3), sqrt(5), ...), stored as {radicand: coefficient}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | int | Fraction = 0):
        if isinstance(terms, Mapping):
            self._terms = {r: _as_fraction(q) for r, q in terms.items() if q != 0}
        else:
            q = _as_fraction(terms)
            self._terms = {1: q} if q else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> Scalar:
        # trusted constructor: keys squarefree, values nonzero
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, Fraction | int]) -> Scalar:
        """Build a scalar from arbitrary positive radicands, reducing each one."""
        acc: dict[int, Fraction] = {}
        for r, q in terms.items():
            if r <= 0:
                raise ValueError(f"radicand must be positive, got {r}")
            s, sf = squarefree_split(r)
            acc[sf] = acc.get(sf, Fraction(0)) + _as_fraction(q) * s
        return cls._raw({r: q for r, q in acc.items() if q})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    def __float__(self) -> float:
        return float(sum(float(q) * math.sqrt(r) for r, q in self._terms.items()))

    # ring operations

    def __add__(self, other: Number) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for r, q in other._terms.items():
            v = out.get(r)
            if v is None:
                out[r] = q
            else:
                v = v + q
                if v:
                    out[r] = v
                else:
                    del out[r]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw({r: -q for r, q in self._terms.items()})

    def __sub__(self, other: Number) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> Scalar:
        return _coerce(other) - self

    def __mul__(self, other: Number) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and 1 in a:
            c = a[1]
            return Scalar._raw({r: q * c for r, q in b.items()})
        if len(b) == 1 and 1 in b:
            c = b[1]
            return Scalar._raw({r: q * c for r, q in a.items()})
        out: dict[int, Fraction] = {}
        gcd = math.gcd
        for r, p in a.items():
            for s, q in b.items():
                g = gcd(r, s)
                key = (r // g) * (s // g)
                v = p * q * g
                w = out.get(key)
                out[key] = v if w is None else w + v
        return Scalar._raw({r: q for r, q in out.items() if q})

    __rmul__ = __mul__

    def conjugate(self, p: int) -> Scalar:
        """Apply the field automorphism sqrt(p) -> -sqrt(p) for a prime ``p``."""
        return Scalar._raw({r: (-q if r % p == 0 else q) for r, q in self._terms.items()})

    def inverse(self) -> Scalar:
        """Multiplicative inverse by successive conjugation over each prime."""
        t = self._terms
        if not t:
            raise ZeroDivisionError("inverse of zero Scalar")
        if len(t) == 1:
            (r, q), = t.items()
            # 1/(q sqrt r) = sqrt(r)/(q r)
            return Scalar._raw({r: 1 / (q * r)})
        p = None
        for r in sorted(t):
            if r != 1:
                p = _smallest_prime_factor(r)
                break
        conj = self.conjugate(p)
        # self*conj = u^2 - p v^2 has no sqrt(p) component
        norm = self * conj
        return conj * norm.inverse()

    def __truediv__(self, other: Number) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> Scalar:
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        """Sign of a scalar whose terms all share one sign (always true for CG values)."""
        signs = {q > 0 for q in self._terms.values()}
        if not signs:
            return 0
        if len(signs) > 1:
            raise ValueError(f"sign of mixed-sign scalar {self} is not supported")
        return 1 if signs.pop() else -1

    # comparisons / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {1: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, r in enumerate(sorted(self._terms)):
            q = self._terms[r]
            neg = q < 0
            mag = -q if neg else q
            if r == 1:
                body = str(mag)
            elif mag == 1:
                body = f"sqrt({r})"
            else:
                body = f"{mag}*sqrt({r})"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._raw({1: Fraction(x)}) if x else ZERO
    return NotImplemented


ZERO = Scalar._raw({})
ONE = Scalar._raw({1: Fraction(1)})


def sqrt_rational(x: int | Fraction) -> Scalar:
    """Exact square root of a non-negative rational as a one-term Scalar.

    >>> str(sqrt_rational(Fraction(1, 2)))
    '1/2*sqrt(2)'
    """
    x = _as_fraction(x)
    if x < 0:
        raise ValueError(f"square root of negative rational {x}")
    if x == 0:
        return ZERO
    p, q = x.numerator, x.denominator
    # sqrt(p/q) = sqrt(p*q)/q
    s, r = squarefree_split(p * q)
    return Scalar._raw({r: Fraction(s, q)})


def sqrt_int(n: int) -> Scalar:
    return sqrt_rational(Fraction(n))


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*sqrt\(\s*(?P<r1>\d+)\s*\))?
          | sqrt\(\s*(?P<r2>\d+)\s*\)
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse the textual form produced by ``str(Scalar)``.

    Accepts sums such as ``"-1 + sqrt(2)"`` or ``"1/2*sqrt(6) - 3/4"``.
    Radicands need not be squarefree; they are reduced.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty scalar literal")
    pos = 0
    acc: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in scalar {text!r} at offset {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("r2") is not None:
            coef, rad = Fraction(1), int(m.group("r2"))
        else:
            coef = Fraction(m.group("coef"))
            rad = int(m.group("r1")) if m.group("r1") is not None else 1
        acc[rad] = acc.get(rad, Fraction(0)) + sign * coef
        pos = m.end()
    return Scalar.from_terms(acc)


def as_scalar(x: Number) -> Scalar:
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return out


def scalar_sum(values: Iterable[Scalar]) -> Scalar:
    acc: dict[int, Fraction] = {}
    for v in values:
        for r, q in v._terms.items():
            acc[r] = acc.get(r, 0) + q
    return Scalar._raw({r: q for r, q in acc.items() if q})
