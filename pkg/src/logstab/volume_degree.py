"""Degrees of invariant divisors as polynomials in the polarization ratio.

On ``X(r, s, a)`` polarize by ``L = mu D_{w0} + lam D_{v0}`` and put
``nu = mu / lam``. The degree of a ray divisor is the (normalized) volume of
the corresponding facet of the moment polytope, which is a polynomial in
``nu`` after dividing by ``lam^(n-1)``:

* every ``D_{w_j}`` has degree ``W``,
* ``D_{v_0}`` has degree ``V_0`` and ``D_{v_i}`` degree ``V_i``,

with ``V_0 = a_i W + V_i``. Everything is exact; nothing here uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Union

from .errors import EmptyC
from .lattice_fan import Rank1Variety, Rank2Variety

Number = Union[int, Fraction]


class RatPoly:
    """Univariate polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> RatPoly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> RatPoly:
        return other if isinstance(other, RatPoly) else RatPoly([other])

    def __add__(self, other) -> RatPoly:
        o = self._coerce(other)
        m = max(len(self.coeffs), len(o.coeffs))
        pad = lambda cs: list(cs) + [0] * (m - len(cs))
        return RatPoly(x + y for x, y in zip(pad(self.coeffs), pad(o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> RatPoly:
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> RatPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RatPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> RatPoly:
        if not isinstance(other, RatPoly):
            return RatPoly(c * Fraction(other) for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return RatPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, k: Number) -> RatPoly:
        return RatPoly(c / Fraction(k) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def complete_homogeneous(d: int, c: Iterable[int]) -> int:
    """``h_d(c)``: sum of all monomials of degree ``d`` in the entries of ``c``."""
    if d < 0:
        return 0
    # h_d(c_1..c_k) = sum_j c_k^j h_{d-j}(c_1..c_{k-1})
    row = [1] + [0] * d
    for x in c:
        for m in range(1, d + 1):
            row[m] += x * row[m - 1]
    return row[d]


def volume_poly(s_eff: int, c: Iterable[int]) -> RatPoly:
    """``sum_k C(s_eff + len(c) - 1, k) h_{s_eff - k}(c) nu^k``."""
    c = list(c)
    if not c:
        raise EmptyC("c must be nonempty")
    if s_eff < 0:
        raise ValueError("s_eff must be non-negative")
    top = s_eff + len(c) - 1
    return RatPoly(comb(top, k) * complete_homogeneous(s_eff - k, c) for k in range(s_eff + 1))


@lru_cache(maxsize=None)
def _power_sum(d: int, values: tuple[int, ...]) -> int:
    # Top-down expansion over the exponent of the first entry, kept separate
    # from the recurrence in complete_homogeneous so the two check each other.
    if d < 0:
        return 0
    if not values:
        return int(d == 0)
    head, rest = values[0], values[1:]
    return sum(head**e * _power_sum(d - e, rest) for e in range(d + 1))


@dataclass(frozen=True)
class DegreeSystem:
    per_ray: Mapping[str, RatPoly]

    def degree(self, name: str, nu: Number) -> Fraction:
        return self.per_ray[name](nu)


@dataclass(frozen=True)
class Rank2Degrees(DegreeSystem):
    W: RatPoly
    V: tuple[RatPoly, ...]


def facet_degree_polys(variety: Rank2Variety) -> Rank2Degrees:
    r, s, a = variety.r, variety.s, variety.a
    binoms = [comb(s + r - 1, k) for k in range(s + 1)]
    W = RatPoly(binoms[k] * _power_sum(s - 1 - k, a) for k in range(s))
    V0 = RatPoly(binoms[k] * _power_sum(s - k, a) for k in range(s + 1))
    V = [V0]
    for i in range(1, r + 1):
        rest = a[: i - 1] + a[i:]
        V.append(RatPoly(binoms[k] * _power_sum(s - k, rest) for k in range(s + 1)))

    assert W == volume_poly(s - 1, (0,) + a)
    assert V0 == volume_poly(s, a)
    for i in range(1, r + 1):
        assert V[i] == volume_poly(s, (0,) + a[: i - 1] + a[i:])

    per_ray = {f"v{i}": V[i] for i in range(r + 1)}
    per_ray.update({f"w{j}": W for j in range(s + 1)})
    return Rank2Degrees(per_ray, W, tuple(V))


def rank1_degrees(variety: Rank1Variety) -> DegreeSystem:
    """Degrees ``q_j`` (normalization ``t = 1``); they do not depend on ``nu``."""
    return DegreeSystem({f"u{j}": RatPoly([q]) for j, q in enumerate(variety.q)})


@lru_cache(maxsize=1024)
def degrees_of(variety) -> DegreeSystem:
    if isinstance(variety, Rank1Variety):
        return rank1_degrees(variety)
    return facet_degree_polys(variety)
