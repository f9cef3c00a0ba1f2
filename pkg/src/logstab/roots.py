"""Descartes' rule of signs and exact isolation of a unique positive root."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import NotOneSignChange, ZeroPoly
from .volume_degree import RatPoly

Number = Union[int, Fraction]


def descartes_sign_changes(p: RatPoly) -> int:
    if p.is_zero():
        raise ZeroPoly("the zero polynomial has no sign sequence")
    signs = [c > 0 for c in p.coeffs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def integer_coefficients(p: RatPoly) -> tuple[int, ...]:
    """Primitive integer multiple of ``p`` with the same signs."""
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _rational_root(coeffs: tuple[int, ...], lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    """A rational root in ``(lo, hi]`` by the rational root theorem, for modest coefficients."""
    cs = list(coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) < 2 or abs(cs[0]) > 10**8 or abs(cs[-1]) > 10**8:
        return None
    p = RatPoly(cs)
    for num in _divisors(cs[0]):
        for den in _divisors(cs[-1]):
            x = Fraction(num, den)
            if lo < x <= hi and p(x) == 0:
                return x
    return None


@dataclass(frozen=True)
class AlgebraicNumber:
    """The unique positive root of an integer polynomial with one sign change.

    The root lies in ``(lo, hi]``; ``rational`` holds it when it is known to be
    rational (then ``hi`` equals it).
    """

    coeffs: tuple[int, ...]
    lo: Fraction
    hi: Fraction
    rational: Optional[Fraction] = None

    @property
    def poly(self) -> RatPoly:
        return RatPoly(self.coeffs)

    def _lead_sign(self) -> int:
        return _sign(Fraction(self.coeffs[-1]))

    def side(self, x: Number) -> int:
        """-1, 0 or 1 as ``x`` is below, equal to or above the root."""
        x = Fraction(x)
        if self.rational is not None:
            return _sign(x - self.rational)
        if x <= 0:
            return -1
        v = _sign(self.poly(x))
        if v == 0:
            return 0
        return 1 if v == self._lead_sign() else -1

    def refine(self, width: Number) -> AlgebraicNumber:
        """A copy whose isolating interval is at most ``width`` wide."""
        width = Fraction(width)
        lo, hi = self.lo, self.hi
        if self.rational is not None:
            return AlgebraicNumber(self.coeffs, max(lo, hi - width), hi, self.rational)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = self.side(mid)
            if s == 0:
                return AlgebraicNumber(self.coeffs, max(lo, mid - width), mid, mid)
            if s < 0:
                lo = mid
            else:
                hi = mid
        return AlgebraicNumber(self.coeffs, lo, hi, None)

    def compare(self, other: Union[Number, AlgebraicNumber]) -> int:
        if not isinstance(other, AlgebraicNumber):
            return -self.side(other)
        if self.rational is not None:
            return -other.side(self.rational)
        if other.rational is not None:
            return -self.side(other.rational)
        a, b = self, other
        for _ in range(400):
            # roots lie in half-open intervals (lo, hi]
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            if _share_root(a, b):
                return 0
            a = a.refine((a.hi - a.lo) / 2)
            b = b.refine((b.hi - b.lo) / 2)
            if a.rational is not None or b.rational is not None:
                return a.compare(b)
        raise ArithmeticError("could not separate two algebraic numbers")

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __float__(self) -> float:
        if self.rational is not None:
            return float(self.rational)
        tight = self.refine(Fraction(1, 2**60))
        return float((tight.lo + tight.hi) / 2)

    def __str__(self) -> str:
        if self.rational is not None:
            return str(self.rational)
        return f"root of {self.poly} in ({self.lo}, {self.hi}]"


def _poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    while not q.is_zero():
        p, q = q, _poly_rem(p, q)
    return p / p.lead if not p.is_zero() else p


def _poly_rem(p: RatPoly, q: RatPoly) -> RatPoly:
    rem = list(p.coeffs)
    while len(rem) >= len(q.coeffs) and any(rem):
        shift = len(rem) - len(q.coeffs)
        f = rem[-1] / q.lead
        for k, c in enumerate(q.coeffs):
            rem[shift + k] -= f * c
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return RatPoly(rem)


def _share_root(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    g = _poly_gcd(a.poly, b.poly)
    if g.degree < 1:
        return False
    while g.coeffs and g.coeffs[0] == 0:
        g = RatPoly(g.coeffs[1:])
    # Positive roots of g are common roots, and a has just one.
    return g.degree >= 1 and descartes_sign_changes(g) >= 1 and _has_positive_root(g)


def _has_positive_root(g: RatPoly) -> bool:
    sf = _poly_gcd(g, RatPoly(k * c for k, c in enumerate(g.coeffs)))
    if sf.degree >= 1:
        g = _poly_div(g, sf)
    # g is now squarefree: a positive root shows up as a sign change on (0, inf).
    if g(0) == 0:
        return True
    big = Fraction(1)
    while _sign(g(big)) != _sign(g.lead) or g(big) == 0:
        big *= 2
    return _sign(g(0)) != _sign(g(big))


def _poly_div(p: RatPoly, q: RatPoly) -> RatPoly:
    rem = list(p.coeffs)
    out = [Fraction(0)] * (len(rem) - len(q.coeffs) + 1)
    while len(rem) >= len(q.coeffs) and any(rem):
        shift = len(rem) - len(q.coeffs)
        f = rem[-1] / q.lead
        out[shift] = f
        for k, c in enumerate(q.coeffs):
            rem[shift + k] -= f * c
        rem.pop()
    return RatPoly(out)


def unique_positive_root(p: RatPoly) -> AlgebraicNumber:
    changes = descartes_sign_changes(p)
    if changes != 1:
        raise NotOneSignChange(f"{p} has {changes} sign changes, expected exactly 1")
    coeffs = integer_coefficients(p)
    poly = RatPoly(coeffs)
    lead = _sign(Fraction(coeffs[-1]))
    lo, hi = Fraction(0), Fraction(1)
    while _sign(poly(hi)) == -lead:
        lo, hi = hi, hi * 2
    if poly(hi) == 0:
        return AlgebraicNumber(coeffs, lo, hi, hi)
    # shrink from the left when the root is small
    while lo == 0 and _sign(poly(hi / 2)) != -lead:
        if poly(hi / 2) == 0:
            return AlgebraicNumber(coeffs, Fraction(0), hi / 2, hi / 2)
        hi /= 2
    if lo == 0:
        lo = hi / 2
    root = _rational_root(coeffs, lo, hi)
    if root is not None:
        return AlgebraicNumber(coeffs, lo, root, root)
    return AlgebraicNumber(coeffs, lo, hi, None)
