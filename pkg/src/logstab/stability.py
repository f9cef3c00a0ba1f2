"""Slope (semi)stability of ``T_X(-log D)`` at a given polarization.

Two independent routes are provided:

* :func:`check_at` uses a finite list of candidate sub-sheaves (rank 2), or
  closed forms (rank 1), together with two structural shortcuts;
* :func:`brute_force_at` enumerates every equivariant saturated sub-sheaf up
  to the reduction "only spans of ray generators and one generic line
  matter", and is meant as an oracle.

Both compare slopes exactly; ``nu`` is a positive rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Union

from .errors import NonPositiveNu, TooLarge
from .klyachko import (
    FiltrationFamily,
    decompose,
    describe,
    logtangent_filtrations,
    subsheaf_filtrations,
)
from .lattice_fan import Rank1Variety, Rank2Variety, Variety, check_delta, parse_ray
from .linalg import Subspace
from .volume_degree import DegreeSystem, RatPoly, degrees_of

DEFAULT_RAY_BOUND = 8


class Kind(enum.Enum):
    UNSTABLE = "unstable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    STABLE = "stable"

    @property
    def semistable(self) -> bool:
        return self is not Kind.UNSTABLE


class Polystable(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Candidate:
    label: str
    subspace: Subspace
    value: Fraction


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    polystable: Polystable
    mu: Fraction
    witnesses: tuple[Candidate, ...]
    candidates: tuple[Candidate, ...] = field(default=(), repr=False)
    method: str = ""


def _positive_nu(nu) -> Fraction:
    nu = Fraction(nu)
    if nu <= 0:
        raise NonPositiveNu(f"nu must be positive, got {nu}")
    return nu


# -- slopes -------------------------------------------------------------------


def slope(
    family: FiltrationFamily, degrees: DegreeSystem, nu=None
) -> Union[Fraction, RatPoly]:
    """``(1/rank) sum_rho sum_i i e^rho(i) deg(D_rho)``; a polynomial in ``nu`` when ``nu`` is None."""
    total = RatPoly()
    for name, filt in family.per_ray.items():
        weight = filt.first_chern_weight()
        if weight:
            total = total + degrees.per_ray[name] * weight
    total = total / family.rank
    if nu is None:
        return total
    return total(_positive_nu(nu))


def subsheaf_slope(variety: Variety, delta: Iterable[str], g: Subspace, nu=None):
    family = logtangent_filtrations(variety, delta)
    return slope(subsheaf_filtrations(family, g), degrees_of(variety), nu)


def _closed_form_slope(variety: Variety, delta: frozenset[str], g: Subspace) -> RatPoly:
    """``(1/dim G) sum deg(D_rho)`` over rays outside ``delta`` whose generator lies in ``G``."""
    degrees = degrees_of(variety).per_ray
    total = RatPoly()
    for name in variety.ray_names:
        if name not in delta and g.contains(variety.generator(name)):
            total = total + degrees[name]
    return total / g.dim


@lru_cache(maxsize=8192)
def _mu_poly(variety: Variety, delta: frozenset[str]) -> RatPoly:
    return _closed_form_slope(variety, delta, variety.space.full())


def _generic_line(variety: Variety, inside: Optional[Subspace] = None) -> Subspace:
    """A line (inside ``inside`` if given) containing no ray generator."""
    space = variety.space
    basis = (inside or space.full()).basis()
    for k in range(2, 2 + 10 * len(basis) * len(variety.ray_names)):
        vec = [Fraction(0)] * space.lift_dim
        for e, b in enumerate(basis):
            for t in range(space.lift_dim):
                vec[t] += Fraction(k) ** e * b[t]
        line = space.span([vec])
        if line.dim == 1 and not any(line.contains(variety.generator(x)) for x in variety.ray_names):
            return line
    raise AssertionError("no generic line found")


def _decide(mu: Fraction, candidates: list[Candidate]) -> tuple[Kind, tuple[Candidate, ...]]:
    if not candidates:
        return Kind.STABLE, ()
    top = max(c.value for c in candidates)
    witnesses = tuple(c for c in candidates if c.value == top)
    if top < mu:
        return Kind.STABLE, witnesses
    if top == mu:
        return Kind.STRICTLY_SEMISTABLE, witnesses
    return Kind.UNSTABLE, witnesses


# -- shortcuts ----------------------------------------------------------------


def _shortcut(variety: Variety, delta: frozenset[str]) -> Optional[tuple[Kind, str, Subspace]]:
    n, p = variety.n, variety.picard_rank
    if n == 1:
        return Kind.STABLE, "rank one sheaf", None
    if len(delta) == n + p:
        return Kind.STRICTLY_SEMISTABLE, "trivial bundle", _generic_line(variety)
    if p + 1 <= len(delta) <= n + p - 1:
        outside = [x for x in variety.ray_names if x not in delta]
        g = variety.space.span(variety.generator(x) for x in outside)
        return Kind.UNSTABLE, "span of the rays outside D", g
    return None


# -- candidate criterion, rank 2 ----------------------------------------------


@lru_cache(maxsize=8192)
def rank2_candidates(variety: Rank2Variety, delta: frozenset[str]) -> tuple[tuple[str, Subspace, RatPoly], ...]:
    """The finite candidate list, with values as polynomials in ``nu``."""
    r, s = variety.r, variety.s
    deg = degrees_of(variety)
    W, V = deg.W, deg.V
    space = variety.space
    gen = variety.generator
    I = [i for i in range(r + 1) if f"v{i}" not in delta]
    J = [j for j in range(s + 1) if f"w{j}" not in delta]
    z = max(i for i in range(r + 1) if variety.a_at(i) == 0)
    out: list[tuple[str, Subspace, RatPoly]] = []

    if I:
        i0 = min(I)
        out.append((f"v{i0}", space.span([gen(f"v{i0}")]), V[i0]))
        g = space.span(gen(f"v{i}") for i in I)
        out.append(("span(v_I)", g, sum((V[i] for i in I), RatPoly()) / g.dim))
    if J:
        g = space.span(gen(f"w{j}") for j in J)
        if 0 < g.dim < r + s:
            out.append(("span(w_J)", g, W * len(J) / g.dim))
        # A single w ray always spans a sub-sheaf of slope at least W.
        out.append((f"w{J[0]}", space.span([gen(f"w{J[0]}")]), W))
    if len(J) == s + 1:
        tail = set(range(z + 1, r + 1))
        head = set(range(z + 1))
        seen = set()
        for size in range(r):
            for sub in combinations(I, size):
                chosen = set(sub)
                missing = tail - chosen
                cond_i = tail <= chosen
                cond_ii = (
                    head <= chosen
                    and missing
                    and len({variety.a_at(i) for i in missing}) == 1
                )
                if not (cond_i or cond_ii) or sub in seen:
                    continue
                seen.add(sub)
                g = space.span([gen(f"w{j}") for j in J] + [gen(f"v{i}") for i in sub])
                value = (sum((V[i] for i in sub), RatPoly()) + W * (s + 1)) / (s + size)
                label = "span(w, v_{" + ",".join(map(str, sub)) + "})"
                out.append((label, g, value))
    return tuple(_exact(variety, delta, label, g, value) for label, g, value in out)


def _exact(variety: Rank2Variety, delta: frozenset[str], label: str, g: Subspace, value: RatPoly):
    # The listed values ignore rays that happen to fall inside G (for r = 1,
    # span(v0) also contains v1). Those extra rays only add non-negative degree,
    # so the true slope of E_G dominates the listed value coefficientwise.
    exact = _closed_form_slope(variety, delta, g)
    assert all(c >= 0 for c in (exact - value).coeffs), label
    return label, g, exact


def _rank1_closed_form(variety: Rank1Variety, delta: frozenset[str]) -> Optional[tuple[Kind, list[Candidate]]]:
    if len(delta) != 1:
        return None
    (only,) = delta
    _, i = parse_ray(only)
    space = variety.space
    others = [j for j in range(len(variety.q)) if j != i]
    cands = [
        Candidate(f"u{j}", space.span([variety.generator(f"u{j}")]), Fraction(variety.q[j]))
        for j in others
    ]
    if len({variety.q[j] for j in others}) == 1:
        return Kind.STRICTLY_SEMISTABLE, cands
    return Kind.UNSTABLE, cands


def check_at(variety: Variety, delta: Iterable[str], nu) -> Verdict:
    """Decide stability at ``nu`` through the finite candidate criterion and closed forms."""
    nu = _positive_nu(nu)
    delta = check_delta(variety, delta)
    mu = _mu_poly(variety, delta)(nu)

    short = _shortcut(variety, delta)
    if short is not None:
        kind, label, g = short
        witnesses: tuple[Candidate, ...] = ()
        if g is not None:
            witnesses = (Candidate(label, g, _closed_form_slope(variety, delta, g)(nu)),)
        return _finish(variety, delta, nu, kind, mu, witnesses, witnesses, "shortcut")

    if isinstance(variety, Rank1Variety):
        closed = _rank1_closed_form(variety, delta)
        if closed is None:
            oracle = brute_force_at(variety, delta, nu)
            return _finish(
                variety, delta, nu, oracle.kind, mu, oracle.witnesses, oracle.candidates, "oracle"
            )
        kind, cands = closed
        top = max(c.value for c in cands)
        witnesses = tuple(c for c in cands if c.value == top)
        return _finish(variety, delta, nu, kind, mu, witnesses, tuple(cands), "closed form")

    cands = [Candidate(label, g, value(nu)) for label, g, value in rank2_candidates(variety, delta)]
    kind, witnesses = _decide(mu, cands)
    return _finish(variety, delta, nu, kind, mu, witnesses, tuple(cands), "criterion")


def _finish(variety, delta, nu, kind, mu, witnesses, candidates, method) -> Verdict:
    poly = {
        Kind.STABLE: Polystable.YES,
        Kind.UNSTABLE: Polystable.NO,
    }.get(kind) or _polystable_semistable(variety, delta, nu)
    return Verdict(kind, poly, mu, tuple(witnesses), tuple(candidates), method)


# -- brute-force oracle -------------------------------------------------------


@lru_cache(maxsize=256)
def _span_table(variety: Variety) -> dict[frozenset[str], tuple[int, frozenset[str], Subspace]]:
    """For every set of rays: dimension of its span, the rays inside it, the span itself."""
    names = variety.ray_names
    gens = {x: variety.generator(x) for x in names}
    table = {}
    for k in range(1, len(names) + 1):
        for sub in combinations(names, k):
            g = variety.space.span(gens[x] for x in sub)
            inside = frozenset(x for x in names if g.contains(gens[x]))
            table[frozenset(sub)] = (g.dim, inside, g)
    return table


def _proper_ray_spans(variety: Variety, delta: frozenset[str], within: Optional[Subspace] = None):
    """Distinct spans ``G`` of sets of rays outside ``delta`` with ``1 <= dim G < dim(within)``."""
    table = _span_table(variety)
    outside = [x for x in variety.ray_names if x not in delta]
    if within is not None:
        outside = [x for x in outside if within.contains(variety.generator(x))]
    top = variety.n if within is None else within.dim
    seen = set()
    for k in range(1, len(outside) + 1):
        for sub in combinations(outside, k):
            dim, inside, g = table[frozenset(sub)]
            closed = frozenset(x for x in inside if x not in delta)
            if 1 <= dim < top and closed not in seen:
                seen.add(closed)
                yield closed, dim, g


def brute_force_at(
    variety: Variety, delta: Iterable[str], nu, ray_bound: int = DEFAULT_RAY_BOUND
) -> Verdict:
    """Exhaustive oracle over ray spans plus one generic line."""
    nu = _positive_nu(nu)
    delta = check_delta(variety, delta)
    if len(variety.ray_names) > ray_bound:
        raise TooLarge(f"{len(variety.ray_names)} rays exceeds the bound {ray_bound}")
    degrees = degrees_of(variety)
    deg = {x: degrees.degree(x, nu) for x in variety.ray_names}
    mu = sum((deg[x] for x in variety.ray_names if x not in delta), Fraction(0)) / variety.n
    cands = [
        Candidate("rays " + ",".join(sorted(closed)), g, sum(deg[x] for x in closed) / dim)
        for closed, dim, g in _proper_ray_spans(variety, delta)
    ]
    if variety.n >= 2:
        cands.append(Candidate("generic line", _generic_line(variety), Fraction(0)))
    kind, witnesses = _decide(mu, cands)
    return Verdict(kind, Polystable.UNDETERMINED if kind is Kind.STRICTLY_SEMISTABLE else
                   (Polystable.YES if kind is Kind.STABLE else Polystable.NO),
                   mu, witnesses, tuple(cands), "oracle")


# -- polystability ------------------------------------------------------------


def _summand_is_stable(variety: Variety, delta: frozenset[str], g: Subspace, nu: Fraction) -> bool:
    if g.dim == 1:
        return True
    mu_g = _closed_form_slope(variety, delta, g)(nu)
    if mu_g <= 0:
        return False  # a generic line inside G has slope 0
    degrees = degrees_of(variety)
    for closed, dim, _ in _proper_ray_spans(variety, delta, within=g):
        if sum(degrees.degree(x, nu) for x in closed) / dim >= mu_g:
            return False
    return True


def _in_product_family(variety: Variety, delta: frozenset[str]) -> bool:
    if not isinstance(variety, Rank2Variety) or any(variety.a):
        return False
    tags = sorted(parse_ray(x)[0] for x in delta)
    return tags in (["v"], ["w"], ["v", "w"])


def _polystable_semistable(variety: Variety, delta: frozenset[str], nu: Fraction) -> Polystable:
    """Poly-stability of a strictly semistable sheaf, when one of the known arguments applies."""
    n, p = variety.n, variety.picard_rank
    if len(delta) == n + p:
        return Polystable.YES
    if isinstance(variety, Rank1Variety) and len(delta) == 1:
        return Polystable.YES
    if _in_product_family(variety, delta):
        return Polystable.YES
    summands = decompose(variety, delta)
    if summands is not None:
        mu = _mu_poly(variety, delta)(nu)
        if all(
            _closed_form_slope(variety, delta, g)(nu) == mu and _summand_is_stable(variety, delta, g, nu)
            for g in summands
        ):
            return Polystable.YES
    return Polystable.UNDETERMINED


def polystable_at(variety: Variety, delta: Iterable[str], nu) -> Polystable:
    return check_at(variety, delta, nu).polystable


def witness_summary(variety: Variety, c: Candidate) -> str:
    return f"{c.label}: {describe(variety, c.subspace)}"
