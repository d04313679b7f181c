"""Outward-rounded rational intervals for certified inequality checks.

Endpoints are exact ``Fraction`` values.  After every operation the lower end is
rounded down and the upper end up to a dyadic rational carrying ``prec``
significant bits, which keeps denominators small without ever losing the
enclosure.  Transcendental constants come from series with explicit tail bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

DEFAULT_PRECISION = 170


def _floor_log2(q: Fraction) -> int:
    """floor(log2 q) for q > 0."""
    e = q.numerator.bit_length() - q.denominator.bit_length()
    # 2^e is within a factor 2 of q; fix up
    if Fraction(2) ** e > q:
        e -= 1
    elif Fraction(2) ** (e + 1) <= q:
        e += 1
    return e


def round_down(q: Fraction, prec: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    if q < 0:
        return -round_up(-q, prec)
    shift = prec - 1 - _floor_log2(q)
    if shift >= 0:
        scaled = (q.numerator << shift) // q.denominator
        return Fraction(scaled, 1 << shift)
    scaled = q.numerator // (q.denominator << -shift)
    return Fraction(scaled << -shift)


def round_up(q: Fraction, prec: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    if q < 0:
        return -round_down(-q, prec)
    shift = prec - 1 - _floor_log2(q)
    if shift >= 0:
        scaled = -((-(q.numerator << shift)) // q.denominator)
        return Fraction(scaled, 1 << shift)
    scaled = -((-q.numerator) // (q.denominator << -shift))
    return Fraction(scaled << -shift)


@dataclass(frozen=True)
class IntervalRational:
    lower: Fraction
    upper: Fraction
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, q, prec: int = DEFAULT_PRECISION) -> "IntervalRational":
        q = Fraction(q)
        return cls(q, q, prec)

    def _make(self, lo: Fraction, hi: Fraction, prec: int | None = None) -> "IntervalRational":
        p = prec if prec is not None else self.prec
        return IntervalRational(round_down(lo, p), round_up(hi, p), p)

    def _coerce(self, other) -> "IntervalRational":
        if isinstance(other, IntervalRational):
            return other
        return IntervalRational.exact(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        return self._make(self.lower + o.lower, self.upper + o.upper, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return IntervalRational(-self.upper, -self.lower, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        c = [self.lower * o.lower, self.lower * o.upper, self.upper * o.lower, self.upper * o.upper]
        return self._make(min(c), max(c), min(self.prec, o.prec))

    __rmul__ = __mul__

    def reciprocal(self) -> "IntervalRational":
        if self.lower <= 0 <= self.upper:
            raise ZeroDivisionError("interval contains zero")
        return self._make(1 / self.upper, 1 / self.lower)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> "IntervalRational":
        if k < 0:
            return (self ** (-k)).reciprocal()
        if self.lower < 0:
            raise ValueError("powers are implemented for nonnegative intervals only")
        result = IntervalRational.exact(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self) -> "IntervalRational":
        return self.root(2)

    def root(self, k: int) -> "IntervalRational":
        if self.lower < 0:
            raise ValueError("root of a negative interval")
        return IntervalRational(_root_down(self.lower, k, self.prec), _root_up(self.upper, k, self.prec), self.prec)

    # certified comparisons: True only when the relation holds for every point
    def certainly_lt(self, other) -> bool:
        return self.upper < self._coerce(other).lower

    def certainly_le(self, other) -> bool:
        return self.upper <= self._coerce(other).lower

    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, q) -> bool:
        return self.lower <= Fraction(q) <= self.upper

    def __repr__(self) -> str:
        return f"[{float(self.lower):.17g}, {float(self.upper):.17g}]"


def _iroot(x: int, k: int) -> int:
    """floor(x^(1/k)) for integer x >= 0."""
    if x < 2:
        return x
    if k == 2:
        return isqrt(x)
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _root_down(q: Fraction, k: int, prec: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    bits = prec + max(0, (q.denominator.bit_length() - q.numerator.bit_length()) // k) + 2
    scale = 1 << (k * bits)
    return Fraction(_iroot(q.numerator * scale // q.denominator, k), 1 << bits)


def _root_up(q: Fraction, k: int, prec: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    lo = _root_down(q, k, prec)
    bits = lo.denominator.bit_length() - 1
    hi = lo + Fraction(1, 1 << bits)
    assert hi**k >= q
    return hi


# constants ----------------------------------------------------------------------


def e_interval(prec: int = DEFAULT_PRECISION) -> IntervalRational:
    """sum_{j<=K} 1/j! plus the tail bound 2/(K+1)!."""
    total = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        total += term
        j += 1
        term /= j
        if term < Fraction(1, 1 << (prec + 8)):
            break
    return IntervalRational(round_down(total, prec), round_up(total + 2 * term, prec), prec)


def _arctan_inv(x: int, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of arctan(1/x) by the alternating series."""
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < Fraction(1, 1 << (prec + 8)):
            # alternating with decreasing terms: the next term bounds the error
            lo, hi = (total - term, total) if k % 2 else (total, total + term)
            return lo, hi
        total += term if k % 2 == 0 else -term
        k += 1


def pi_interval(prec: int = DEFAULT_PRECISION) -> IntervalRational:
    """Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    a_lo, a_hi = _arctan_inv(5, prec)
    b_lo, b_hi = _arctan_inv(239, prec)
    lo = 16 * a_lo - 4 * b_hi
    hi = 16 * a_hi - 4 * b_lo
    return IntervalRational(round_down(lo, prec), round_up(hi, prec), prec)


def stirling_sandwich_check(kmax: int = 10_000, prec: int = DEFAULT_PRECISION) -> tuple[bool, int | None]:
    """sqrt(2 pi k)(k/e)^k <= k! <= e sqrt(k)(k/e)^k for 2 <= k <= kmax.

    With R_k = k! e^k / k^k the statement reads 2 pi k <= R_k^2 <= e^2 k, and
    R_k = R_{k-1} e ((k-1)/k)^{k-1}.  Returns (ok, first failing k).
    """
    e = e_interval(prec)
    two_pi = 2 * pi_interval(prec)
    e2 = e * e
    r = e  # R_1 = e
    for k in range(2, kmax + 1):
        r = r * e * (IntervalRational.exact(Fraction(k - 1, k), prec) ** (k - 1))
        sq = r * r
        if not ((two_pi * k).certainly_le(sq) and sq.certainly_le(e2 * k)):
            return False, k
    return True, None
