"""Klyachko filtrations of logarithmic tangent sheaves and their sub-sheaves.

An equivariant reflexive sheaf on a toric variety is recorded by a vector
space ``E`` together with, for every ray ``rho``, an increasing filtration
``E^rho(j)``. For ``T_X(-log D)`` with ``D = sum_{rho in delta} D_rho`` the
space is ``N ⊗ Q`` and

* ``rho in delta``: ``E^rho(j)`` is 0 for ``j <= -1`` and ``E`` for ``j >= 0``;
* ``rho not in delta``: 0 for ``j <= -2``, ``Span(u_rho)`` at ``j = -1`` and
  ``E`` for ``j >= 0``.

The equivariant saturated sub-sheaf attached to a subspace ``G`` has
filtrations ``E^rho(j) ∩ G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import NotASubspace, OverlappingAmbients
from .lattice_fan import Rank1Variety, Variety, check_delta, parse_ray
from .linalg import Subspace


@dataclass(frozen=True)
class RayFiltration:
    """Jump list ``((j_1, S_1), (j_2, S_2), ...)``; ``E(j)`` is the last ``S_k`` with ``j_k <= j``.

    Stored canonically: thresholds increase strictly and each jump enlarges
    the subspace, so equal filtrations compare equal.
    """

    zero: Subspace
    jumps: tuple[tuple[int, Subspace], ...]

    @classmethod
    def from_steps(cls, zero: Subspace, steps: Iterable[tuple[int, Subspace]]) -> RayFiltration:
        out: list[tuple[int, Subspace]] = []
        current = zero
        for j, sub in sorted(steps, key=lambda t: t[0]):
            if not current <= sub:
                raise ValueError("filtration is not increasing")
            if sub != current:
                if out and out[-1][0] == j:
                    out[-1] = (j, sub)
                else:
                    out.append((j, sub))
                current = sub
        return cls(zero, tuple(out))

    def at(self, j: int) -> Subspace:
        current = self.zero
        for t, sub in self.jumps:
            if t > j:
                break
            current = sub
        return current

    @property
    def top(self) -> Subspace:
        return self.jumps[-1][1] if self.jumps else self.zero

    def thresholds(self) -> list[int]:
        return [j for j, _ in self.jumps]

    def first_chern_weight(self) -> int:
        """``sum_i i * e(i)`` with ``e(i) = dim E(i-1) - dim E(i)``."""
        total, prev = 0, 0
        for j, sub in self.jumps:
            total += j * (prev - sub.dim)
            prev = sub.dim
        return total


@dataclass(frozen=True)
class FiltrationFamily:
    ambient: Subspace
    per_ray: Mapping[str, RayFiltration]

    @property
    def rank(self) -> int:
        return self.ambient.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiltrationFamily):
            return NotImplemented
        return self.ambient == other.ambient and dict(self.per_ray) == dict(other.per_ray)

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(sorted(self.per_ray.items(), key=lambda kv: kv[0]))))


def logtangent_filtrations(variety: Variety, delta: Iterable[str]) -> FiltrationFamily:
    delta = check_delta(variety, delta)
    space = variety.space
    zero, full = space.zero(), space.full()
    per_ray = {}
    for name in variety.ray_names:
        if name in delta:
            steps = [(0, full)]
        else:
            steps = [(-1, space.span([variety.generator(name)])), (0, full)]
        per_ray[name] = RayFiltration.from_steps(zero, steps)
    return FiltrationFamily(full, per_ray)


def subsheaf_filtrations(family: FiltrationFamily, g: Subspace) -> FiltrationFamily:
    if g.space != family.ambient.space or not g <= family.ambient:
        raise NotASubspace("G is not contained in the ambient space of the family")
    if g.dim < 1:
        raise NotASubspace("G must be nonzero")
    per_ray = {
        name: RayFiltration.from_steps(filt.zero, [(j, sub & g) for j, sub in filt.jumps])
        for name, filt in family.per_ray.items()
    }
    return FiltrationFamily(g, per_ray)


def direct_sum(families: Sequence[FiltrationFamily]) -> FiltrationFamily:
    if not families:
        raise ValueError("need at least one family")
    first = families[0]
    ambient = first.ambient
    for fam in families[1:]:
        if fam.ambient.space != ambient.space or set(fam.per_ray) != set(first.per_ray):
            raise OverlappingAmbients("families live on different spaces or fans")
        if (ambient & fam.ambient).dim != 0:
            raise OverlappingAmbients("ambient spaces of the summands intersect")
        ambient = ambient + fam.ambient
    per_ray = {}
    for name, filt in first.per_ray.items():
        thresholds = sorted({j for fam in families for j in fam.per_ray[name].thresholds()})
        steps = []
        for j in thresholds:
            sub = filt.zero
            for fam in families:
                sub = sub + fam.per_ray[name].at(j)
            steps.append((j, sub))
        per_ray[name] = RayFiltration.from_steps(filt.zero, steps)
    return FiltrationFamily(ambient, per_ray)


# -- decompositions -----------------------------------------------------------


def _coordinate_complement(g: Subspace) -> Optional[Subspace]:
    """Some subspace ``F`` spanned by lifted basis vectors with ``G ⊕ F`` the whole space."""
    space = g.space
    current = g
    basis: list[tuple[int, ...]] = []
    for k in range(space.lift_dim):
        e = tuple(int(i == k) for i in range(space.lift_dim))
        if not current.contains(e):
            basis.append(e)
            current = current + space.span([e])
    if not basis:
        return None
    return space.span(basis)


def _candidate_splittings(variety: Variety, delta: frozenset[str]) -> list[list[Subspace]]:
    space = variety.space
    n, p = variety.n, variety.picard_rank
    outside = [name for name in variety.ray_names if name not in delta]
    gens = {name: variety.generator(name) for name in variety.ray_names}

    def span(names: Iterable[str]) -> Subspace:
        return space.span(gens[x] for x in names)

    def lines(names: Iterable[str]) -> list[Subspace]:
        return [span([x]) for x in names]

    out: list[list[Subspace]] = []
    if not outside:
        out.append([space.span([e]) for e in space.full().basis()])
        return out
    if len(delta) == p and len(outside) == n and span(outside).dim == n:
        out.append(lines(outside))
    if p + 1 <= len(delta) <= n + p - 1:
        g = span(outside)
        f = _coordinate_complement(g)
        if f is not None:
            out.append([g, f])

    if isinstance(variety, Rank1Variety):
        return out

    r, s, a = variety.r, variety.s, variety.a
    vs = [f"v{i}" for i in range(r + 1)]
    ws = [f"w{j}" for j in range(s + 1)]
    tags = sorted(parse_ray(x) for x in delta)
    if all(x == 0 for x in a):
        if len(tags) == 1 and tags[0][0] == "v":
            out.append(lines(x for x in vs if x not in delta) + [span(ws)])
        if len(tags) == 1 and tags[0][0] == "w":
            out.append(lines(x for x in ws if x not in delta) + [span(vs)])
        if len(tags) == 2 and tags[0][0] == tags[1][0] == "v":
            out.append([span(ws), span(vs)])
        if len(tags) == 2 and tags[0][0] == tags[1][0] == "w":
            out.append([span(vs), span(ws)])
    if len(tags) == 2 and tags[0][0] == tags[1][0] == "v" and tags[0][1] >= 1:
        i, j = tags[0][1], tags[1][1]
        rest = [x for x in vs if x not in delta]
        if a[i - 1] < a[j - 1]:
            out.append(lines(ws) + lines(rest))
        else:
            out.append([span(ws + rest), span([f"v{i}"])])
    if tags == [("v", 0)] and r >= 2 and a[0] == 0:
        out.append([span(ws + vs[2:]), span(["v1"])])
    return out


def decompose(variety: Variety, delta: Iterable[str]) -> Optional[list[Subspace]]:
    """Summands ``G_1, ..., G_k`` with ``E = ⊕ E_{G_k}``, or ``None``.

    Only a fixed list of known splittings is tried; each is accepted only if
    re-summing the sub-sheaf filtrations reproduces the family exactly. A
    ``None`` answer does not certify indecomposability.
    """
    delta = check_delta(variety, delta)
    family = logtangent_filtrations(variety, delta)
    for summands in _candidate_splittings(variety, delta):
        if len(summands) < 2 or any(g.dim == 0 for g in summands):
            continue
        try:
            total = direct_sum([subsheaf_filtrations(family, g) for g in summands])
        except OverlappingAmbients:
            continue
        if total == family:
            return summands
    return None


def describe(variety: Variety, g: Subspace) -> str:
    """Human-readable description of ``g``: the rays it contains, plus its dimension."""
    inside = [name for name in variety.ray_names if g.contains(variety.generator(name))]
    label = ",".join(inside) if inside else "-"
    return f"dim {g.dim} containing [{label}]"

