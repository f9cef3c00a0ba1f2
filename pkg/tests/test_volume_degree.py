from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from logstab.errors import EmptyC
from logstab.lattice_fan import build_rank1, build_rank2
from logstab.volume_degree import (
    RatPoly,
    complete_homogeneous,
    degrees_of,
    facet_degree_polys,
    rank1_degrees,
    volume_poly,
)

from conftest import small_rank2

nu = sympy.Symbol("nu", positive=True)


def to_ratpoly(expr):
    poly = sympy.Poly(sympy.expand(expr), nu)
    return RatPoly([Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())])


def simplex_integral(f, ys):
    """Integrate over {y >= 0, sum y <= 1} by iterated integrals."""
    for k in range(len(ys) - 1, -1, -1):
        upper = 1 - sum(ys[:k])
        f = sympy.integrate(f, (ys[k], 0, upper))
    return f


def moment_volume(r, s, a):
    """Normalized volume of {x, y >= 0, sum y <= 1, sum x <= nu + a.y}."""
    ys = sympy.symbols(f"y1:{r + 1}")
    body = (nu + sum(ai * yi for ai, yi in zip(a, ys))) ** s / factorial(s)
    return factorial(r + s) * simplex_integral(body, list(ys))


def w_facet(r, s, a):
    ys = sympy.symbols(f"y1:{r + 1}")
    body = (nu + sum(ai * yi for ai, yi in zip(a, ys))) ** (s - 1) / factorial(s - 1)
    return factorial(r + s - 1) * simplex_integral(body, list(ys))


def test_f1_degrees():
    d = facet_degree_polys(build_rank2(1, 1, [1]))
    assert d.W == RatPoly([1])
    assert d.V[0] == RatPoly([1, 1])
    assert d.V[1] == RatPoly([0, 1])


def test_volume_poly_small():
    assert volume_poly(1, [0, 1]) == RatPoly([1, 2])
    assert volume_poly(0, [5]) == RatPoly([1])
    with pytest.raises(EmptyC):
        volume_poly(2, [])


@given(st.integers(0, 6), st.lists(st.integers(0, 4), min_size=1, max_size=4))
@settings(max_examples=150, deadline=None)
def test_complete_homogeneous_matches_generating_function(d, c):
    t = sympy.Symbol("t")
    series = sympy.prod([1 / (1 - x * t) for x in c])
    expected = sympy.series(series, t, 0, d + 1).removeO().coeff(t, d)
    assert complete_homogeneous(d, c) == expected


def test_total_volume_matches_cayley_integral():
    # L^n = L^(n-1).(nu D_w0 + D_v0) = nu W + V0 when lambda = 1
    for x in small_rank2(max_rs=5, max_a=2):
        d = facet_degree_polys(x)
        assert d.W * RatPoly([0, 1]) + d.V[0] == to_ratpoly(moment_volume(x.r, x.s, x.a))


def test_w_facet_matches_integral():
    for x in small_rank2(max_rs=5, max_a=2):
        assert facet_degree_polys(x).W == to_ratpoly(w_facet(x.r, x.s, x.a))


def shoelace_area(points):
    total = Fraction(0)
    for (x0, y0), (x1, y1) in zip(points, points[1:] + points[:1]):
        total += Fraction(x0 * y1 - x1 * y0)
    return abs(total) / 2


@pytest.mark.parametrize("a", [0, 1, 2, 3])
@pytest.mark.parametrize("nu_value", [Fraction(1, 3), Fraction(1), Fraction(5, 2)])
def test_hirzebruch_polygon(a, nu_value):
    # polygon {x >= 0, 0 <= y <= 1, x <= nu + a y}; edges are lattice segments
    pts = [(Fraction(0), Fraction(0)), (nu_value, Fraction(0)), (nu_value + a, Fraction(1)), (Fraction(0), Fraction(1))]
    d = facet_degree_polys(build_rank2(1, 1, [a]))
    assert d.V[1](nu_value) == nu_value  # bottom edge y = 0
    assert d.V[0](nu_value) == nu_value + a  # top edge y = 1
    assert d.W(nu_value) == 1  # left and slanted edges have lattice length 1
    assert 2 * shoelace_area(pts) == nu_value * d.W(nu_value) + d.V[0](nu_value)


def test_relation_v0_equals_ai_w_plus_vi():
    for x in small_rank2(max_rs=6, max_a=3):
        d = facet_degree_polys(x)
        for i in range(1, x.r + 1):
            assert d.V[0] == d.W * x.a_at(i) + d.V[i]


def test_degrees_have_expected_shape():
    for x in small_rank2(max_rs=6, max_a=3):
        d = facet_degree_polys(x)
        assert d.W.degree == x.s - 1
        assert all(v.degree == x.s for v in d.V)
        assert d.V[0].lead == comb(x.r + x.s - 1, x.s)


def test_rank1_degrees_are_weights():
    x = build_rank1([1, 2, 3])
    d = rank1_degrees(x)
    assert [d.degree(f"u{j}", Fraction(7)) for j in range(3)] == [1, 2, 3]
    assert degrees_of(x).per_ray == d.per_ray


@given(
    st.lists(st.fractions(max_denominator=5), max_size=4),
    st.lists(st.fractions(max_denominator=5), max_size=4),
    st.fractions(max_denominator=7),
)
@settings(max_examples=100, deadline=None)
def test_ratpoly_ring_laws(p, q, x):
    P, Q = RatPoly(p), RatPoly(q)
    assert (P + Q)(x) == P(x) + Q(x)
    assert (P * Q)(x) == P(x) * Q(x)
    assert (P - P).is_zero()
