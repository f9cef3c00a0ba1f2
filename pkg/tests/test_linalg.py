from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from logstab.linalg import VectorSpace, nullspace, rank, rref

small_int = st.integers(min_value=-4, max_value=4)


def matrices(width):
    return st.lists(st.lists(small_int, min_size=width, max_size=width), min_size=0, max_size=5)


@given(st.integers(1, 5).flatmap(lambda w: st.tuples(st.just(w), matrices(w))))
@settings(max_examples=200, deadline=None)
def test_rank_matches_sympy(data):
    width, rows = data
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert rank(rows, width) == expected


@given(st.integers(1, 5).flatmap(lambda w: st.tuples(st.just(w), matrices(w))))
@settings(max_examples=100, deadline=None)
def test_nullspace_is_orthogonal_and_complementary(data):
    width, rows = data
    echelon = rref(rows, width)
    kernel = nullspace(echelon, width)
    assert len(kernel) + len(echelon) == width
    for k in kernel:
        for row in rows:
            assert sum(Fraction(x) * y for x, y in zip(row, k)) == 0


def test_rref_is_canonical():
    a = rref([[1, 2, 3], [2, 4, 7]], 3)
    b = rref([[0, 0, 5], [3, 6, 0]], 3)
    assert a == b


def test_subspace_lattice_operations():
    space = VectorSpace(3)
    x = space.span([[1, 0, 0]])
    y = space.span([[0, 1, 0]])
    xy = space.span([[1, 1, 0], [1, -1, 0]])
    assert (x + y) == xy
    assert (x & y).dim == 0
    assert x < xy and not xy <= x
    assert (xy & space.span([[1, 1, 1], [0, 0, 1]])) == space.span([[1, 1, 0]])


def test_quotient_space_dimensions():
    # Q^3 / Q(1,1,1): the images of e0, e1 already span everything.
    space = VectorSpace(3, ((1, 1, 1),))
    assert space.dim == 2
    assert space.zero().dim == 0
    assert space.span([[1, 0, 0]]).dim == 1
    assert space.span([[1, 0, 0], [0, 1, 0]]) == space.full()
    assert space.span([[1, 0, 0]]).contains([0, -1, -1])
