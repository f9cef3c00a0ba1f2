"""The two parametric families of toric varieties handled by this package.

Rank 2: ``X(r, s, a)``, the projectivization of
``O ⊕ O(a_1) ⊕ ... ⊕ O(a_r)`` over ``P^s``. Its lattice is ``Z^(r+s)`` with
the first ``s`` coordinates carrying the ``w`` rays and the last ``r`` the
``v`` rays::

    w_j = e_j                          (1 <= j <= s)
    v_i = e_{s+i}                      (1 <= i <= r)
    v_0 = -(v_1 + ... + v_r)
    w_0 = a_1 v_1 + ... + a_r v_r - (w_1 + ... + w_s)

Rank 1: the (fake) weighted projective space with weights ``q``. The lattice
is ``Z^(n+1) / Z q`` and the ray ``u_i`` is the image of ``e_i``; we keep the
lift together with the relation and never choose a basis of the quotient.

Rays are named by short strings: ``"v0".."vr"``, ``"w0".."ws"`` and
``"u0".."un"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import BadGcd, BadLength, PreconditionError, UnknownRay, UnsortedA
from .linalg import VectorSpace

_RAY_RE = re.compile(r"^([uvw])(\d+)$")


def parse_ray(name: str) -> tuple[str, int]:
    m = _RAY_RE.match(name.strip())
    if not m:
        raise UnknownRay(f"not a ray name: {name!r}")
    return m.group(1), int(m.group(2))


def ray_sort_key(name: str) -> tuple[int, int]:
    tag, idx = parse_ray(name)
    return ("vwu".index(tag), idx)


@dataclass(frozen=True)
class Rank2Variety:
    r: int
    s: int
    a: tuple[int, ...]
    rays: Mapping[str, tuple[int, ...]] = field(compare=False, repr=False)
    space: VectorSpace = field(compare=False, repr=False)

    picard_rank = 2

    @property
    def n(self) -> int:
        return self.r + self.s

    @property
    def ray_names(self) -> list[str]:
        return [f"v{i}" for i in range(self.r + 1)] + [f"w{j}" for j in range(self.s + 1)]

    def a_at(self, i: int) -> int:
        """``a_i`` with the convention ``a_0 = 0``."""
        return 0 if i == 0 else self.a[i - 1]

    def generator(self, name: str) -> tuple[int, ...]:
        try:
            return self.rays[name]
        except KeyError:
            raise UnknownRay(f"{name!r} is not a ray of {self}") from None

    def __str__(self) -> str:
        return f"X(r={self.r}, s={self.s}, a={list(self.a)})"


@dataclass(frozen=True)
class Rank1Variety:
    q: tuple[int, ...]
    rays: Mapping[str, tuple[int, ...]] = field(compare=False, repr=False)
    space: VectorSpace = field(compare=False, repr=False)

    picard_rank = 1

    @property
    def n(self) -> int:
        return len(self.q) - 1

    @property
    def ray_names(self) -> list[str]:
        return [f"u{i}" for i in range(len(self.q))]

    def generator(self, name: str) -> tuple[int, ...]:
        try:
            return self.rays[name]
        except KeyError:
            raise UnknownRay(f"{name!r} is not a ray of {self}") from None

    def __str__(self) -> str:
        return f"P(q={list(self.q)})"


Variety = Union[Rank2Variety, Rank1Variety]


def build_rank2(r: int, s: int, a: Iterable[int]) -> Rank2Variety:
    a = tuple(int(x) for x in a)
    if r < 1 or s < 1:
        raise PreconditionError(f"r and s must be positive, got r={r}, s={s}")
    if len(a) != r:
        raise BadLength(f"a has {len(a)} entries but r={r}")
    if any(x < 0 for x in a):
        raise PreconditionError(f"a must be non-negative, got {list(a)}")
    if any(x > y for x, y in zip(a, a[1:])):
        raise UnsortedA(f"a must be sorted non-decreasing, got {list(a)}")
    n = r + s

    def e(k: int) -> list[int]:
        return [int(i == k) for i in range(n)]

    rays: dict[str, tuple[int, ...]] = {}
    for j in range(1, s + 1):
        rays[f"w{j}"] = tuple(e(j - 1))
    for i in range(1, r + 1):
        rays[f"v{i}"] = tuple(e(s + i - 1))
    rays["v0"] = tuple(-sum(rays[f"v{i}"][k] for i in range(1, r + 1)) for k in range(n))
    rays["w0"] = tuple(
        sum(a[i - 1] * rays[f"v{i}"][k] for i in range(1, r + 1))
        - sum(rays[f"w{j}"][k] for j in range(1, s + 1))
        for k in range(n)
    )
    rays = {name: rays[name] for name in sorted(rays, key=ray_sort_key)}
    return Rank2Variety(r, s, a, rays, VectorSpace(n))


def build_rank1(q: Iterable[int]) -> Rank1Variety:
    q = tuple(int(x) for x in q)
    if len(q) < 2:
        raise PreconditionError("need at least two weights")
    if any(x < 1 for x in q):
        raise PreconditionError(f"weights must be positive, got {list(q)}")
    if math.gcd(*q) != 1:
        raise BadGcd(f"gcd of {list(q)} is {math.gcd(*q)}, expected 1")
    m = len(q)
    rays = {f"u{i}": tuple(int(i == k) for k in range(m)) for i in range(m)}
    return Rank1Variety(q, rays, VectorSpace(m, (q,)))


def check_delta(variety: Variety, delta: Iterable[str]) -> frozenset[str]:
    delta = frozenset(delta)
    for name in delta:
        variety.generator(name)
    return delta


@dataclass(frozen=True)
class DivisorClass:
    """``mu D_{w0} + lam D_{v0}`` on a rank-2 variety."""

    mu: Fraction
    lam: Fraction

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.mu + other.mu, self.lam + other.lam)

    @property
    def nu(self) -> Fraction:
        return self.mu / self.lam


@dataclass(frozen=True)
class Rank1Class:
    """A multiple of ``D_{u0}`` on a rank-1 variety; ``q_0 D_j ~ q_j D_0``."""

    coeff: Fraction

    def __add__(self, other: Rank1Class) -> Rank1Class:
        return Rank1Class(self.coeff + other.coeff)


def class_of(variety: Variety, coeffs: Mapping[str, int]) -> DivisorClass | Rank1Class:
    if isinstance(variety, Rank1Variety):
        total = Fraction(0)
        for name, c in coeffs.items():
            _, j = parse_ray(name)
            variety.generator(name)
            total += Fraction(c * variety.q[j], variety.q[0])
        return Rank1Class(total)
    mu = lam = Fraction(0)
    for name, c in coeffs.items():
        variety.generator(name)
        tag, i = parse_ray(name)
        if tag == "w":
            mu += c
        else:
            lam += c
            mu -= c * variety.a_at(i)
    return DivisorClass(mu, lam)


def is_ample(c: DivisorClass | Rank1Class) -> bool:
    if isinstance(c, Rank1Class):
        return c.coeff > 0
    return c.mu > 0 and c.lam > 0


def log_anticanonical_class(variety: Variety, delta: Iterable[str]) -> DivisorClass | Rank1Class:
    """Class of ``-(K_X + D)``, i.e. of the sum of the ray divisors outside ``delta``."""
    delta = check_delta(variety, delta)
    return class_of(variety, {name: 1 for name in variety.ray_names if name not in delta})
