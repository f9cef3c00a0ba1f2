"""Toric log del Pezzo pairs on surfaces of Picard rank at most two.

A pair ``(X, D)`` is log del Pezzo when ``-(K_X + D)`` is ample. On such a pair
we ask whether ``T_X(-log D)`` is (semi/poly)stable with respect to
``-(K_X + D)`` itself.

Surfaces covered: ``P^2`` and the Hirzebruch surfaces ``F_r``. On ``F_r`` the
divisors are labelled ``D0 = D_{v0}``, ``D1 = D_{w1}``, ``D2 = D_{v1}``,
``D3 = D_{w0}``; on ``P^2`` ``Di = D_{ui}``. Smooth toric surfaces of Picard
rank three or more carry no log del Pezzo pair with nonzero ``D`` of this
kind; that statement is recorded here but not computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Union

from .lattice_fan import (
    DivisorClass,
    Rank1Class,
    Rank1Variety,
    Rank2Variety,
    build_rank1,
    build_rank2,
    is_ample,
    log_anticanonical_class,
)
from .stability import Kind, Polystable, Verdict, check_at

HIRZEBRUCH_LABELS = {"D0": "v0", "D1": "w1", "D2": "v1", "D3": "w0"}
P2_LABELS = {"D0": "u0", "D1": "u1", "D2": "u2"}


@dataclass(frozen=True)
class SurfaceKind:
    name: str  # "P2" or "F"
    r: Optional[int] = None

    @property
    def labels(self) -> dict[str, str]:
        return P2_LABELS if self.name == "P2" else HIRZEBRUCH_LABELS

    def variety(self) -> Union[Rank1Variety, Rank2Variety]:
        if self.name == "P2":
            return build_rank1([1, 1, 1])
        return build_rank2(1, 1, [self.r])

    def __str__(self) -> str:
        return "P2" if self.name == "P2" else f"F{self.r}"


P2 = SurfaceKind("P2")


def hirzebruch(r: int) -> SurfaceKind:
    if r < 0:
        raise ValueError("r must be non-negative")
    return SurfaceKind("F", r)


def to_rays(kind: SurfaceKind, delta: Iterable[str]) -> frozenset[str]:
    """Accept labels ``D0..D3`` or ray names."""
    labels = kind.labels
    return frozenset(labels.get(x, x) for x in delta)


def to_labels(kind: SurfaceKind, delta: Iterable[str]) -> list[str]:
    inverse = {ray: label for label, ray in kind.labels.items()}
    return sorted(inverse[x] for x in delta)


def _hirzebruch_clause(r: int, labels: frozenset[str]) -> bool:
    """Ampleness of ``-(K + D)`` on ``F_r`` as a clause-by-clause table."""
    if labels in (frozenset(), frozenset({"D0"})):
        return r in (0, 1)
    if labels in map(frozenset, ({"D1"}, {"D3"}, {"D0", "D1"}, {"D0", "D3"})):
        return r == 0
    if labels in map(frozenset, ({"D2"}, {"D1", "D2"}, {"D2", "D3"})):
        return True
    if labels in map(frozenset, ({"D0", "D2"}, {"D1", "D3"})):
        return False
    raise ValueError(f"no clause for {sorted(labels)}")


def enumerate_pairs(kind: SurfaceKind) -> list[tuple[frozenset[str], bool]]:
    """Reduced divisors and whether ``-(K + D)`` is ample.

    ``F_r``: every divisor with at most two components, the empty one included.
    ``P^2``: every nonzero reduced divisor.
    """
    variety = kind.variety()
    names = variety.ray_names
    out = []
    if kind.name == "P2":
        subsets = [c for k in range(1, len(names) + 1) for c in combinations(names, k)]
    else:
        subsets = [c for k in range(3) for c in combinations(names, k)]
    for sub in subsets:
        delta = frozenset(sub)
        ample = is_ample(log_anticanonical_class(variety, delta))
        if kind.name == "F":
            expected = _hirzebruch_clause(kind.r, frozenset(to_labels(kind, delta)))
            assert ample == expected, (kind, sorted(delta))
        else:
            assert ample == (len(delta) <= 2), sorted(delta)
        out.append((delta, ample))
    return out


@dataclass(frozen=True)
class PairReport:
    surface: SurfaceKind
    divisor: frozenset[str]
    ample: bool
    polarization: Union[DivisorClass, Rank1Class]
    nu: Optional[Fraction] = None
    verdict: Optional[Verdict] = None


def _published(kind: SurfaceKind, labels: frozenset[str], v: Verdict) -> None:
    """Known verdicts for specific pairs; raises if the computation disagrees."""
    if kind.name == "P2":
        if len(labels) == 1:
            assert v.kind is Kind.STRICTLY_SEMISTABLE and v.polystable is Polystable.YES
        elif len(labels) == 2:
            assert v.kind is Kind.UNSTABLE
        return
    r = kind.r
    if r == 0 and (len(labels) == 1 or labels in map(frozenset, ({"D0", "D1"}, {"D0", "D3"}, {"D1", "D2"}, {"D2", "D3"}))):
        assert v.polystable is Polystable.YES, (kind, labels, v.kind)
    if r == 1 and labels == {"D0"}:
        assert v.kind is Kind.STABLE
    if r >= 1 and labels in map(frozenset, ({"D2"}, {"D1", "D2"}, {"D2", "D3"})):
        assert v.kind is Kind.UNSTABLE


def delpezzo_report(kind: SurfaceKind, delta: Iterable[str]) -> PairReport:
    variety = kind.variety()
    delta = to_rays(kind, delta)
    cls = log_anticanonical_class(variety, delta)
    if not is_ample(cls):
        return PairReport(kind, delta, False, cls)
    if isinstance(cls, DivisorClass):
        nu: Optional[Fraction] = cls.nu
        verdict = check_at(variety, delta, nu)
    else:
        # Picard rank one: every ample class is a multiple of the generator.
        nu = None
        verdict = check_at(variety, delta, 1)
    _published(kind, frozenset(to_labels(kind, delta)), verdict)
    return PairReport(kind, delta, True, cls, nu, verdict)


def surface_reports(kind: SurfaceKind) -> list[PairReport]:
    return [delpezzo_report(kind, delta) for delta, _ in enumerate_pairs(kind)]
