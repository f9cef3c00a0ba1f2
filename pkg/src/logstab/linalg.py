"""Exact linear algebra over Q for the small spaces that occur here.

Subspaces are stored by the reduced row echelon form of a spanning set, which
is canonical: two subspaces are equal exactly when their echelon rows are.

A quotient space ``Q^m / R`` (used for weighted projective spaces, where the
ray generators live in ``Z^(n+1) / Z.q``) is modelled by working with
preimages: every subspace is represented by its preimage in ``Q^m``, which
always contains ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction


def as_vector(v: Iterable) -> Vector:
    return tuple(x if type(x) is Fraction else Fraction(x) for x in v)


def rref(rows: Iterable[Sequence], width: int) -> tuple[Vector, ...]:
    """Nonzero rows of the reduced row echelon form of ``rows``."""
    mat = [list(as_vector(r)) for r in rows]
    for r in mat:
        if len(r) != width:
            raise ValueError(f"expected vectors of length {width}, got {len(r)}")
    pivot_row = 0
    for col in range(width):
        pivot = next((i for i in range(pivot_row, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        pr = mat[pivot_row]
        inv = 1 / pr[col]
        if inv != 1:
            pr[:] = [x * inv for x in pr]
        for i, row in enumerate(mat):
            if i != pivot_row and row[col] != 0:
                f = row[col]
                row[:] = [x - f * y for x, y in zip(row, pr)]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row])


def nullspace(rows: Sequence[Vector], width: int) -> list[Vector]:
    """A basis of ``{x : r . x = 0 for every r in rows}``."""
    echelon = rref(rows, width)
    pivots = [next(j for j, x in enumerate(r) if x != 0) for r in echelon]
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for r, p in zip(echelon, pivots):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


def rank(rows: Iterable[Sequence], width: int) -> int:
    return len(rref(rows, width))


def _key(rows: tuple[Vector, ...]) -> tuple:
    # Fraction.__hash__ is slow; numerator/denominator pairs hash the same data cheaply.
    return tuple((x.numerator, x.denominator) for r in rows for x in r)


@dataclass(frozen=True, eq=False)
class VectorSpace:
    """The ambient space ``Q^lift_dim / span(relations)``."""

    lift_dim: int
    relations: tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", rref(self.relations, self.lift_dim))
        object.__setattr__(self, "_hash", hash((self.lift_dim, _key(self.relations))))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, VectorSpace):
            return NotImplemented
        return self._hash == other._hash and self.lift_dim == other.lift_dim and self.relations == other.relations

    def __hash__(self) -> int:
        return self._hash

    @property
    def dim(self) -> int:
        return self.lift_dim - len(self.relations)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        rows = rref(list(vectors) + list(self.relations), self.lift_dim)
        return Subspace(self, rows)

    def zero(self) -> Subspace:
        return Subspace(self, self.relations)

    def full(self) -> Subspace:
        return self.span(
            tuple(Fraction(int(i == j)) for j in range(self.lift_dim))
            for i in range(self.lift_dim)
        )


@dataclass(frozen=True, eq=False)
class Subspace:
    space: VectorSpace
    rows: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.space._hash, _key(self.rows))))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Subspace):
            return NotImplemented
        return self._hash == other._hash and self.space == other.space and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    @property
    def dim(self) -> int:
        return len(self.rows) - len(self.space.relations)

    def contains(self, v: Sequence) -> bool:
        return _contains(self, as_vector(v))

    def _reduce_contains(self, v: Vector) -> bool:
        # reduce v against the echelon rows; v lies in the span iff nothing is left
        rest = list(v)
        if len(rest) != self.space.lift_dim:
            raise ValueError(f"expected a vector of length {self.space.lift_dim}")
        for row in self.rows:
            p = next(j for j, x in enumerate(row) if x != 0)
            f = rest[p]
            if f:
                rest = [x - f * y for x, y in zip(rest, row)]
        return not any(rest)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.space, rref(self.rows + other.rows, self.space.lift_dim))

    def __and__(self, other: Subspace) -> Subspace:
        return _meet(self, other)

    def _meet(self, other: Subspace) -> Subspace:
        self._check(other)
        if self <= other:
            return self
        if other <= self:
            return other
        width = self.space.lift_dim
        perp = nullspace(self.rows, width) + nullspace(other.rows, width)
        return Subspace(self.space, rref(nullspace(perp, width), width))

    def __le__(self, other: Subspace) -> bool:
        return _below(self, other)

    def _below(self, other: Subspace) -> bool:
        self._check(other)
        return len(self.rows) <= len(other.rows) and all(other.contains(r) for r in self.rows)

    def __lt__(self, other: Subspace) -> bool:
        return self <= other and self != other

    def basis(self) -> list[Vector]:
        """Representatives of a basis (lifts, for a quotient space)."""
        if not self.space.relations:
            return list(self.rows)
        out: list[Vector] = []
        current = list(self.space.relations)
        for r in self.rows:
            if rank(current + [r], self.space.lift_dim) > len(current):
                current.append(r)
                out.append(r)
        return out

    def _check(self, other: Subspace) -> None:
        if self.space != other.space:
            raise ValueError("subspaces of different ambient spaces")

    def __repr__(self) -> str:
        vecs = ["(" + ", ".join(str(x) for x in v) + ")" for v in self.basis()]
        return f"Span[{', '.join(vecs)}]" if vecs else "Span[]"


# Subspaces are immutable and canonical, so the basic queries can be memoized;
# the same few lines and hyperplanes are intersected over and over.
_contains = lru_cache(maxsize=1 << 16)(Subspace._reduce_contains)
_meet = lru_cache(maxsize=1 << 14)(Subspace._meet)
_below = lru_cache(maxsize=1 << 16)(Subspace._below)
