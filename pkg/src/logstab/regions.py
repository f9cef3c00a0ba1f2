"""Exact stability and semistability regions in the polarization ratio ``nu``.

For ``X(r, s, a)`` and a reduced invariant divisor ``D`` the set of ``nu > 0``
for which ``T_X(-log D)`` is stable (resp. semistable) is a finite union of
intervals whose endpoints are rationals or positive roots of explicit case
polynomials. Every case polynomial is emitted together with an independent
reconstruction from the degree polynomials, and the two must agree up to a
positive constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Union

from .errors import BadOrder, BoundViolated, DisagreesWithDirect, NotACoveredCase, NotCovered, PreconditionError
from .klyachko import logtangent_filtrations
from .lattice_fan import Rank1Variety, Rank2Variety, Variety, check_delta, parse_ray
from .roots import AlgebraicNumber, unique_positive_root
from .stability import Kind, slope
from .volume_degree import RatPoly, degrees_of

Endpoint = Union[Fraction, AlgebraicNumber]


def compare_to(x: Fraction, e: Endpoint) -> int:
    """Sign of ``x - e``."""
    if isinstance(e, AlgebraicNumber):
        return e.side(x)
    return (x > e) - (x < e)


@dataclass(frozen=True)
class Interval:
    """A subinterval of ``(0, inf)``; ``hi = None`` means unbounded."""

    lo: Endpoint
    hi: Optional[Endpoint]
    lo_closed: bool = False
    hi_closed: bool = False

    @classmethod
    def point(cls, x: Endpoint) -> Interval:
        return cls(x, x, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo_closed and self.hi_closed and self.hi is not None and self.lo == self.hi

    def contains(self, nu) -> bool:
        nu = Fraction(nu)
        if nu <= 0:
            return False
        c = compare_to(nu, self.lo)
        if c < 0 or (c == 0 and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        c = compare_to(nu, self.hi)
        return c < 0 or (c == 0 and self.hi_closed)

    def __str__(self) -> str:
        if self.is_point:
            return "{" + str(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{self.lo}, {hi}{right}"


ZERO = Fraction(0)
EVERYWHERE = Interval(ZERO, None)


@dataclass(frozen=True)
class StabilityRegion:
    stable: tuple[Interval, ...]
    semistable: tuple[Interval, ...]
    reason: str = ""

    def kind_at(self, nu) -> Kind:
        if any(i.contains(nu) for i in self.stable):
            return Kind.STABLE
        if any(i.contains(nu) for i in self.semistable):
            return Kind.STRICTLY_SEMISTABLE
        return Kind.UNSTABLE

    def endpoints(self) -> list[Endpoint]:
        out = []
        for i in self.stable + self.semistable:
            out.append(i.lo)
            if i.hi is not None:
                out.append(i.hi)
        return out


EMPTY = StabilityRegion((), ())


# -- case polynomials ---------------------------------------------------------


@dataclass(frozen=True)
class CasePolynomial:
    """A displayed case polynomial and its reconstruction ``factor * poly``."""

    name: str
    poly: RatPoly
    reconstruction: RatPoly
    relation: str
    reconstruction_delta: frozenset[str]
    factor: Fraction

    def root(self) -> AlgebraicNumber:
        return unique_positive_root(self.poly)


@dataclass(frozen=True)
class PolynomialCatalog:
    displayed: dict[str, CasePolynomial] = field(default_factory=dict)
    direct: dict[str, RatPoly] = field(default_factory=dict)

    def __getitem__(self, name: str) -> CasePolynomial:
        return self.displayed[name]


def _mu(variety: Variety, delta: Iterable[str]) -> RatPoly:
    return slope(logtangent_filtrations(variety, delta), degrees_of(variety))


def _positive_factor(poly: RatPoly, reconstruction: RatPoly, name: str) -> Fraction:
    if poly.is_zero() or reconstruction.is_zero():
        raise DisagreesWithDirect(f"{name}: zero polynomial")
    factor = reconstruction.lead / poly.lead
    if factor <= 0 or poly * factor != reconstruction:
        raise DisagreesWithDirect(f"{name}: {poly} is not a positive multiple of {reconstruction}")
    return factor


def _entry(name, poly, variety, delta, target, scale, relation) -> CasePolynomial:
    """``reconstruction = scale * (mu_delta - target)`` checked against ``poly``."""
    rec = (_mu(variety, delta) - target) * scale
    return CasePolynomial(name, poly, rec, relation, frozenset(delta), _positive_factor(poly, rec, name))


def p0_displayed(r: int, s: int) -> RatPoly:
    return RatPoly([comb(s + r - 1, k) for k in range(s)] + [-s * comb(s + r - 1, s)])


def p1_rank_one(s: int, a: int) -> RatPoly:
    return RatPoly([(s + 1) * comb(s, k) * a ** (s - k - 1) for k in range(s)] + [-s])


def q_rank_one(s: int, a: int) -> RatPoly:
    return RatPoly([-comb(s, k) * a ** (s - k - 1) for k in range(s)] + [1])


def _v1k(r: int, s: int, a: int, k: int) -> int:
    return comb(s - k + r - 2, s - k) * a ** (s - k)


def p1_equal(r: int, s: int, a: int) -> RatPoly:
    cs = [
        (-s + Fraction((s - k) * (s + 1), a * (r - 1))) * comb(s + r - 1, k) * _v1k(r, s, a, k)
        for k in range(s)
    ]
    return RatPoly(cs + [-s * comb(s + r - 1, s)])


def q_v0_equal(r: int, s: int, a: int) -> RatPoly:
    cs = [(r - Fraction(s - k, a)) * comb(s + r - 1, k) * _v1k(r, s, a, k) for k in range(s)]
    return RatPoly(cs + [r * comb(s + r - 1, s)])


def q_pair_equal(r: int, s: int, a: int) -> RatPoly:
    cs = [
        (1 - Fraction(s - k, a * (r - 1))) * comb(s + r - 1, k) * _v1k(r, s, a, k)
        for k in range(s)
    ]
    return RatPoly(cs + [comb(s + r - 1, s)])


def q_delta(s: int, a1: int, a2: int) -> RatPoly:
    cs = [
        Fraction(a1 ** (s - k), a2 - a1) * (Fraction(a2, a1) ** (s - k) - 1 - a2 + a1) * comb(s + 1, k)
        for k in range(s)
    ]
    return RatPoly(cs + [-(s + 1)])


def alpha(p: int, a: int, b: int, r: int) -> Fraction:
    """Coefficient ``W_{s-p} - V_{2,s-p}`` for ``a_1 = a`` and ``a_2 = ... = a_r = b``."""
    first = sum(comb(j + r - 2, j) * b**j * a ** (p - 1 - j) for j in range(p))
    second = sum(comb(j + r - 3, j) * b**j * a ** (p - j) for j in range(p + 1))
    value = Fraction(first - second)
    regrouped = sum(
        (Fraction(j + 1, r - 2) - b) * comb(j + r - 2, j + 1) * b**j * a ** (p - 1 - j) for j in range(p)
    ) - a**p
    assert value == regrouped
    return value


def q_s(s: int, a: int, b: int, r: int) -> RatPoly:
    return RatPoly(
        [comb(s + r - 1, k) * alpha(s - k, a, b, r) for k in range(s)] + [-comb(s + r - 1, s)]
    )


def _direct(variety: Rank2Variety, delta: frozenset[str]) -> dict[str, RatPoly]:
    deg = degrees_of(variety)
    mu = _mu(variety, delta)
    out = {"P0": mu - deg.V[0], "P1": mu - deg.V[1], "Q": mu - deg.W}
    if variety.r >= 2:
        out["P2"] = mu - deg.V[2]
    return out


def case_polynomials(variety: Variety, delta: Iterable[str]) -> PolynomialCatalog:
    """Displayed case polynomials for ``(variety, delta)``, each checked against its reconstruction."""
    delta = check_delta(variety, delta)
    if not isinstance(variety, Rank2Variety):
        raise NotACoveredCase("case polynomials exist only for rank-2 varieties")
    r, s, a = variety.r, variety.s, variety.a
    deg = degrees_of(variety)
    W, V = deg.W, deg.V
    tags = sorted(parse_ray(x) for x in delta)
    out: dict[str, CasePolynomial] = {}
    equal = r >= 2 and a[0] == a[-1] >= 1
    n = r + s

    if tags == [("v", r)] and a[-1] == 1 and variety.a_at(r - 1) == 0:
        out["P0"] = _entry("P0", p0_displayed(r, s), variety, delta, V[0], n, "(r+s)(mu - V0)")
    elif tags == [("v", 0)] and r == 1 and a[0] >= 1:
        out["P1"] = _entry("P1", p1_rank_one(s, a[0]), variety, delta, V[1], n, "(1+s)(mu - V1)")
        pair = frozenset({"v0", "w0"})
        out["Q"] = _entry("Q", q_rank_one(s, a[0]), variety, pair, W, n, "(1+s)(mu[v0+w_j] - W)")
    elif len(tags) == 2 and tags[0] == ("v", 0) and tags[1][0] == "w" and r == 1 and a[0] >= 1:
        out["Q"] = _entry("Q", q_rank_one(s, a[0]), variety, delta, W, n, "(1+s)(mu - W)")
    elif tags == [("v", 0)] and equal:
        out["P1"] = _entry("P1", p1_equal(r, s, a[0]), variety, delta, V[1], n, "(r+s)(mu - V1)")
        out["Q_v0"] = _entry("Q_v0", q_v0_equal(r, s, a[0]), variety, delta, W, n, "(r+s)(mu - W)")
    elif len(tags) == 2 and tags[0] == ("v", 0) and equal:
        scale = Fraction(n, r) if tags[1][0] == "w" else Fraction(n, r - 1)
        relation = "(r+s)(mu - W) / " + ("r" if tags[1][0] == "w" else "(r-1)")
        out["Q_pair"] = _entry("Q_pair", q_pair_equal(r, s, a[0]), variety, delta, W, scale, relation)
    elif tags == [("v", 0), ("v", 1)] and r == 2 and 0 < a[0] < a[1]:
        out["Q_delta"] = _entry(
            "Q_delta", q_delta(s, a[0], a[1]), variety, delta, V[2], Fraction(n, s + 1), "(r+s)(mu - V2) / (s+1)"
        )
    elif tags == [("v", 0), ("v", 1)] and r >= 3 and 0 < a[0] < a[1] == a[-1]:
        out["Q_s"] = _entry(
            "Q_s", q_s(s, a[0], a[1], r), variety, delta, V[2], Fraction(n, s + 1), "(r+s)(mu - V2) / (s+1)"
        )
    else:
        raise NotACoveredCase(f"no case polynomial attached to D = {sorted(delta)} on {variety}")
    return PolynomialCatalog(out, _direct(variety, delta))


# -- thresholds ---------------------------------------------------------------


def threshold_s_exceeds_delta(a1: int, a2: int, s: int) -> bool:
    """Whether ``s > ln(1 + a2 - a1) / ln(a2 / a1)``, decided in integers."""
    if a1 >= a2:
        raise BadOrder(f"need a1 < a2, got {a1}, {a2}")
    if a1 < 1 or s < 1:
        raise PreconditionError("a1 and s must be positive")
    return a2**s > a1**s * (1 + a2 - a1)


def threshold_delta_r(a: int, b: int, r: int) -> int:
    """Largest ``p`` with ``alpha_p <= 0``; the sign of ``alpha_p`` flips exactly once.

    ``alpha_p < 0`` for every ``p <= m = b(r-2)`` (each summand is then
    non-positive), so the result is at least ``m``. It can equal ``m``: for
    ``(a, b, r) = (1, 2, 3)`` one has ``alpha = -2, -2, 2, ...`` and the answer
    is 2. The check below therefore uses ``[m, floor(3.2 m) + 1]``.
    """
    if a >= b:
        raise BadOrder(f"need a < b, got {a}, {b}")
    if a < 1 or r < 3:
        raise PreconditionError("need a >= 1 and r >= 3")
    m = b * (r - 2)
    upper = (16 * m) // 5 + 1
    signs = [alpha(p, a, b, r) > 0 for p in range(1, upper + 3)]
    if True not in signs:
        raise BoundViolated(f"alpha_p stays non-positive up to p = {upper + 2}")
    first = signs.index(True) + 1
    if not all(signs[first - 1 :]):
        raise BoundViolated("alpha_p changes sign more than once")
    delta = first - 1
    if not m <= delta <= upper:
        raise BoundViolated(f"delta_r = {delta} outside [{m}, {upper}]")
    return delta


# -- regions ------------------------------------------------------------------


def _open_closed(lo: Endpoint, hi: Endpoint) -> tuple[tuple[Interval, ...], tuple[Interval, ...]]:
    """Stable on ``(lo, hi)``, semistable on ``(lo, hi]``."""
    return (Interval(lo, hi),), (Interval(lo, hi, False, True),)


def _semistable_point(root: AlgebraicNumber, reason: str) -> StabilityRegion:
    return StabilityRegion((), (Interval.point(root),), reason)


def _rank1_region(variety: Rank1Variety, delta: frozenset[str]) -> StabilityRegion:
    n = variety.n
    if not delta:
        raise NotCovered("no closed-form region for the tangent sheaf (empty divisor)")
    if n == 1:
        return StabilityRegion((EVERYWHERE,), (EVERYWHERE,), "rank one sheaf")
    if len(delta) == n + 1:
        return StabilityRegion((), (EVERYWHERE,), "trivial bundle")
    if len(delta) >= 2:
        return StabilityRegion((), (), "too many components")
    (only,) = delta
    i = parse_ray(only)[1]
    rest = {q for j, q in enumerate(variety.q) if j != i}
    if len(rest) == 1:
        return StabilityRegion((), (EVERYWHERE,), "remaining weights equal")
    return StabilityRegion((), (), "remaining weights differ")


def _product_region(variety: Rank2Variety, tags: list[tuple[str, int]]) -> StabilityRegion:
    r, s = variety.r, variety.s
    kinds = [t for t, _ in tags]
    if kinds == ["v"]:
        return StabilityRegion((), (Interval.point(Fraction(s + 1, r)),), "product, one v")
    if kinds == ["w"]:
        return StabilityRegion((), (Interval.point(Fraction(s, r + 1)),), "product, one w")
    if kinds == ["v", "w"]:
        return StabilityRegion((), (Interval.point(Fraction(s, r)),), "product, v and w")
    return StabilityRegion((), (), "product, two of a kind")


def _pair_rule(variety: Rank2Variety, delta: frozenset[str]) -> StabilityRegion:
    r, s, a = variety.r, variety.s, variety.a[0]
    if s <= a * (r - 1):
        return StabilityRegion((), (), "s <= a(r-1)")
    root = case_polynomials(variety, delta)["Q_pair"].root()
    return _semistable_point(root, "s > a(r-1)")


def _rank2_region(variety: Rank2Variety, delta: frozenset[str]) -> StabilityRegion:
    r, s, a = variety.r, variety.s, variety.a
    n = r + s
    if not delta:
        raise NotCovered("no closed-form region for the tangent sheaf (empty divisor)")
    if len(delta) == n + 2:
        return StabilityRegion((), (EVERYWHERE,), "trivial bundle")
    if 3 <= len(delta) <= n + 1:
        return StabilityRegion((), (), "too many components")
    tags = sorted(parse_ray(x) for x in delta)
    if a[-1] == 0:
        return _product_region(variety, tags)
    equal = a[0] == a[-1]

    if len(tags) == 1:
        tag, i = tags[0]
        if tag == "w" or 1 <= i <= r - 1:
            return StabilityRegion((), (), "single divisor without a stable range")
        if i == r and i >= 1:
            if a[-1] == 1 and variety.a_at(r - 1) == 0:
                nu0 = case_polynomials(variety, delta)["P0"].root()
                return StabilityRegion(*_open_closed(ZERO, nu0), "a = (0,...,0,1)")
            return StabilityRegion((), (), "a_r >= 2 or a_{r-1} >= 1")
        # D = D_{v0}
        if r == 1:
            nu1 = case_polynomials(variety, delta)["P1"].root()
            return StabilityRegion(*_open_closed(ZERO, nu1), "r = 1")
        if not equal:
            return StabilityRegion((), (), "a_1 < a_r")
        A = a[0]
        if A * (r - 1) >= s + 1:
            return StabilityRegion((), (), "a >= (s+1)/(r-1)")
        cat = case_polynomials(variety, delta)
        nu1 = cat["P1"].root()
        if A * r >= s:
            return StabilityRegion(*_open_closed(ZERO, nu1), "s/r <= a < (s+1)/(r-1)")
        nu3 = cat["Q_v0"].root()
        if not nu3 < nu1:
            raise AssertionError("expected nu3 < nu1 when a < s/r")
        return StabilityRegion((Interval(nu3, nu1),), (Interval(nu3, nu1, True, True),), "a < s/r")

    (t0, i0), (t1, i1) = tags
    if t0 == t1 == "w":
        return StabilityRegion((), (), "two w divisors")
    if t0 == "v" and t1 == "w":
        if i0 >= 1:
            return StabilityRegion((), (), "v_i + w_j with i >= 1")
        if r == 1:
            nu3 = case_polynomials(variety, delta)["Q"].root()
            return _semistable_point(nu3, "r = 1")
        if not equal:
            return StabilityRegion((), (), "a_1 < a_r")
        return _pair_rule(variety, delta)
    # two v divisors
    if i0 >= 1:
        return StabilityRegion((), (), "v_i + v_j with i, j >= 1")
    if i1 >= 2:
        if not equal:
            return StabilityRegion((), (), "a_1 < a_r")
        return _pair_rule(variety, delta)
    # D = D_{v0} + D_{v1}
    if r == 1:
        return StabilityRegion((), (EVERYWHERE,), "r = 1")
    if equal:
        return _pair_rule(variety, delta)
    if a[0] == 0:
        return StabilityRegion((), (), "0 = a_1 < a_r")
    if r == 2:
        if not threshold_s_exceeds_delta(a[0], a[1], s):
            return StabilityRegion((), (), "s <= delta")
        return _semistable_point(case_polynomials(variety, delta)["Q_delta"].root(), "s > delta")
    if a[1] < a[-1]:
        return StabilityRegion((), (), "a_2 < a_r")
    if s <= threshold_delta_r(a[0], a[1], r):
        return StabilityRegion((), (), "s <= delta_r")
    return _semistable_point(case_polynomials(variety, delta)["Q_s"].root(), "s > delta_r")


def stability_region(variety: Variety, delta: Iterable[str]) -> StabilityRegion:
    delta = check_delta(variety, delta)
    if isinstance(variety, Rank1Variety):
        return _rank1_region(variety, delta)
    return _rank2_region(variety, delta)

