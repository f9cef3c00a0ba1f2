"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Everything is exact, so the tolerance is equality unless a line says otherwise.
Wall-clock limits are pinned per criterion.
"""

import itertools
import time
from fractions import Fraction
from math import floor

import mpmath
import sympy

from logstab.cli import run_sweep
from logstab.delpezzo import P2, delpezzo_report, enumerate_pairs, hirzebruch, to_labels
from logstab.klyachko import logtangent_filtrations, subsheaf_filtrations
from logstab.lattice_fan import Rank2Variety, build_rank1, build_rank2
from logstab.regions import (
    Interval,
    alpha,
    case_polynomials,
    p0_displayed,
    stability_region,
    threshold_delta_r,
    threshold_s_exceeds_delta,
)
from logstab.roots import AlgebraicNumber, descartes_sign_changes, unique_positive_root
from logstab.stability import (
    Kind,
    Polystable,
    _proper_ray_spans,
    check_at,
    rank2_candidates,
    slope,
)
from logstab.volume_degree import RatPoly, degrees_of, facet_degree_polys

from conftest import all_subsets, small_rank1, small_rank2

# every case polynomial met in criteria 1-3, checked again in criterion 9
SEEN_POLYS: list[tuple[str, RatPoly]] = []
SEEN_ENDPOINTS: list[AlgebraicNumber] = []


def report(criterion, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    return ok


def timed(limit, criterion):
    start = time.perf_counter()

    def stop():
        elapsed = time.perf_counter() - start
        report(criterion, elapsed < limit, f"runtime {elapsed:.2f}s < {limit}s")
        return elapsed < limit

    return stop


def _direct_forms(x, delta):
    d = degrees_of(x)
    mu = slope(logtangent_filtrations(x, delta), d)
    out = {"mu-W": mu - d.W}
    for i, v in enumerate(d.V):
        out[f"mu-V{i}"] = mu - v
    return out


def _record_endpoints(region):
    for e in region.endpoints():
        if isinstance(e, AlgebraicNumber):
            SEEN_ENDPOINTS.append(e)


def test_criterion_1_product_case():
    stop = timed(5, 1)
    failures = []
    for r, s in itertools.product((1, 2, 3), repeat=2):
        x = build_rank2(r, s, [0] * r)
        for delta, point in (
            (["v0"], Fraction(s + 1, r)),
            (["w0"], Fraction(s, r + 1)),
            (["v0", "w0"], Fraction(s, r)),
        ):
            if not check_at(x, delta, point).kind.semistable:
                failures.append((r, s, delta, point, "not semistable at the point"))
            for off in (point / 2, point * 3 / 2):
                if check_at(x, delta, off).kind is not Kind.UNSTABLE:
                    failures.append((r, s, delta, off, "semistable off the point"))
            for name, p in _direct_forms(x, delta).items():
                SEEN_POLYS.append((f"product {r},{s} {delta} {name}", p))
        probes = [Fraction(k, 4) for k in range(1, 17)] + [Fraction(s + 1, r), Fraction(s, r + 1), Fraction(s, r)]
        for delta in (["v0", "v1"], ["w0", "w1"]):
            for nu in probes:
                if check_at(x, delta, nu).kind is not Kind.UNSTABLE:
                    failures.append((r, s, delta, nu, "expected unstable"))
    ok = report(1, not failures, f"product case over (r,s) in {{1,2,3}}^2, {len(failures)} failures {failures[:3]}")
    assert stop()
    assert ok


def test_criterion_2_dvr_case():
    stop = timed(5, 2)
    failures = []
    for r in range(1, 5):
        for s in range(1, 6 - r):
            x = build_rank2(r, s, [0] * (r - 1) + [1])
            delta = [f"v{r}"]
            region = stability_region(x, delta)
            cat = case_polynomials(x, delta)
            p0 = cat["P0"]
            if p0.poly != p0_displayed(r, s):
                failures.append((r, s, "P0 differs from the displayed form"))
            SEEN_POLYS.append((f"P0 r={r} s={s}", p0.poly))
            SEEN_POLYS.extend((f"r={r} s={s} {k}", v) for k, v in cat.direct.items())
            nu0 = unique_positive_root(p0_displayed(r, s))
            _record_endpoints(region)
            expected = StabilityRegionShape(nu0)
            if region.stable != expected.stable or region.semistable != expected.semistable:
                failures.append((r, s, "region", str(region.stable), str(region.semistable)))
            if (r, s) == (1, 1) and nu0.rational != 1:
                failures.append((r, s, "nu0 is not exactly 1"))
            tight = nu0.refine(Fraction(1, 10**6))
            if check_at(x, delta, tight.lo).kind is not Kind.STABLE:
                failures.append((r, s, "not stable just below nu0"))
            if check_at(x, delta, tight.hi + Fraction(1, 10**6)).kind is not Kind.UNSTABLE:
                failures.append((r, s, "not unstable just above nu0"))
        for a in itertools.combinations_with_replacement(range(3), r):
            if a[-1] == 0 or (a[-1] == 1 and (r == 1 or a[-2] == 0)):
                continue
            for s in range(1, 6 - r):
                x = build_rank2(r, s, a)
                region = stability_region(x, [f"v{r}"])
                if region.stable or region.semistable:
                    failures.append((r, s, a, "expected empty"))
    ok = report(2, not failures, f"D_(v_r) regions, {len(failures)} failures {failures[:3]}")
    assert stop()
    assert ok


class StabilityRegionShape:
    """(0, nu0) stable and (0, nu0] semistable."""

    def __init__(self, nu0):
        self.stable = (Interval(Fraction(0), nu0),)
        self.semistable = (Interval(Fraction(0), nu0, False, True),)


def test_criterion_3_dv0_cases():
    stop = timed(5, 3)
    checks = []

    f1 = build_rank2(1, 1, [1])
    cat = case_polynomials(f1, ["v0"])
    region = stability_region(f1, ["v0"])
    _record_endpoints(region)
    SEEN_POLYS.extend(("F1 " + k, e.poly) for k, e in cat.displayed.items())
    checks.append(("F1 P1 = 2 - x", cat["P1"].poly == RatPoly([2, -1])))
    checks.append((
        "F1 region (0,2)",
        region.stable == (Interval(Fraction(0), region.stable[0].hi),) and region.stable[0].hi.rational == 2
        and region.semistable[0].hi_closed,
    ))

    x = build_rank2(2, 1, [1, 1])
    cat = case_polynomials(x, ["v0"])
    region = stability_region(x, ["v0"])
    _record_endpoints(region)
    SEEN_POLYS.extend(("(2,1,(1,1)) " + k, e.poly) for k, e in cat.displayed.items())
    direct = _direct_forms(x, ["v0"])["mu-V1"]
    ratio = direct.coeffs[0] / cat["P1"].poly.coeffs[0]
    checks.append(("(2,1,(1,1)) P1 = 1 - 2x", cat["P1"].poly == RatPoly([1, -2])))
    checks.append((f"mu - V1 = {ratio} * P1 with a positive constant", ratio > 0 and cat["P1"].poly * ratio == direct))
    checks.append(("(2,1,(1,1)) region (0,1/2)", region.stable[0].hi.rational == Fraction(1, 2)
                   and region.stable[0].lo == 0))

    x = build_rank2(2, 3, [1, 1])
    cat = case_polynomials(x, ["v0"])
    region = stability_region(x, ["v0"])
    _record_endpoints(region)
    SEEN_POLYS.extend(("(2,3,(1,1)) " + k, e.poly) for k, e in cat.displayed.items())
    (stable,) = region.stable
    nu3, nu1 = stable.lo, stable.hi
    q, p1 = cat["Q_v0"].poly, cat["P1"].poly
    checks.append(("endpoints are the roots of Q and P1",
                   nu3.compare(cat["Q_v0"].root()) == 0 and nu1.compare(cat["P1"].root()) == 0))
    # a rational strictly between them, certified by the signs of Q and P1
    t3, t1 = nu3.refine(Fraction(1, 10**3)), nu1.refine(Fraction(1, 10**3))
    mid = (t3.hi + t1.lo) / 2
    sign_ok = t3.hi < t1.lo and q(mid) * q.lead > 0 and p1(mid) * p1.lead < 0
    checks.append((f"nu3 < {mid} < nu1 by sign evaluation", sign_ok))
    checks.append(("semistable [nu3, nu1]", region.semistable == (Interval(nu3, nu1, True, True),)))

    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        report(3, ok, name)
    assert stop()
    assert not failed


def test_criterion_4_rank_one():
    stop = timed(2, 4)
    failures = []
    probes = (Fraction(1, 2), Fraction(1), Fraction(3))
    # n = 1 is left out: there the sheaf is a line bundle, hence stable
    for n in range(2, 5):
        x = build_rank1([1] * (n + 1))
        for name in x.ray_names:
            for nu in probes:
                v = check_at(x, [name], nu)
                if v.kind is not Kind.STRICTLY_SEMISTABLE or v.polystable is not Polystable.YES:
                    failures.append((n, name, nu, v.kind, v.polystable))
        for k in range(2, n + 1):
            for delta in itertools.combinations(x.ray_names, k):
                if check_at(x, delta, 1).kind is not Kind.UNSTABLE:
                    failures.append((n, delta))
    if check_at(build_rank1([1, 2, 2]), ["u0"], 1).polystable is not Polystable.YES:
        failures.append("(1,2,2)")
    if check_at(build_rank1([1, 2, 3]), ["u0"], 1).kind is not Kind.UNSTABLE:
        failures.append("(1,2,3)")
    for q in ((1, 2, 2), (1, 2, 3), (1, 1, 2, 3), (2, 3, 5, 7)):
        x = build_rank1(q)
        for k in range(2, x.n + 1):
            for delta in itertools.combinations(x.ray_names, k):
                if check_at(x, delta, 1).kind is not Kind.UNSTABLE:
                    failures.append((q, delta))
    ok = report(4, not failures, f"rank one, {len(failures)} failures {failures[:3]}")
    assert stop()
    assert ok


def test_criterion_5_oracle_sweep():
    stop = timed(120, 5)
    cells, mismatches = run_sweep(max_rs=4, max_a=2, max_n=3, max_q=3)
    ok = report(5, not mismatches, f"{cells} cells, {len(mismatches)} mismatches {mismatches[:3]}")
    assert stop()
    assert ok
    assert cells > 10000


def test_criterion_6_polynomial_identities():
    stop = timed(10, 6)
    bad_relation, bad_slope, count = [], [], 0
    for x in list(small_rank2(4, 2)) + list(small_rank1(3, 3)):
        deg = degrees_of(x)
        if isinstance(x, Rank2Variety):
            d = facet_degree_polys(x)
            for i in range(1, x.r + 1):
                if d.V[0] != d.W * x.a_at(i) + d.V[i]:
                    bad_relation.append((x, i))
        for delta in all_subsets(x.ray_names):
            delta = frozenset(delta)
            fam = logtangent_filtrations(x, delta)
            total = sum((deg.per_ray[n] for n in x.ray_names if n not in delta), RatPoly()) / x.n
            if slope(fam, deg) != total:
                bad_slope.append((x, delta, "whole sheaf"))
            if isinstance(x, Rank2Variety):
                subspaces = [g for _, g, _ in rank2_candidates(x, delta)]
            else:
                subspaces = [g for _, _, g in _proper_ray_spans(x, delta)]
            for g in subspaces:
                count += 1
                inside = [n for n in x.ray_names if n not in delta and g.contains(x.generator(n))]
                closed = sum((deg.per_ray[n] for n in inside), RatPoly()) / g.dim
                if slope(subsheaf_filtrations(fam, g), deg) != closed:
                    bad_slope.append((x, delta, g))
    ok1 = report(6, not bad_relation, f"V0 = a_i W + V_i, {len(bad_relation)} failures")
    ok2 = report(6, not bad_slope, f"filtration slope = closed form on {count} sub-sheaves, {len(bad_slope)} failures")
    assert stop()
    assert ok1 and ok2


def _s_exceeds_delta_interval(a1, a2, s):
    mpmath.iv.dps = 60
    value = s * (mpmath.iv.log(a2) - mpmath.iv.log(a1)) - mpmath.iv.log(1 + a2 - a1)
    if value.a > 0:
        return True
    if value.b < 0:
        return False
    assert a2**s == a1**s * (1 + a2 - a1)  # an exact tie: s equals delta
    return False


def test_criterion_7_thresholds():
    stop = timed(5, 7)
    mismatches = []
    for a1, a2, s in itertools.product(range(1, 4), range(1, 4), range(1, 7)):
        if a1 < a2 and threshold_s_exceeds_delta(a1, a2, s) != _s_exceeds_delta_interval(a1, a2, s):
            mismatches.append((a1, a2, s))
    ok = report(7, not mismatches, f"s > delta against interval logarithms, {len(mismatches)} mismatches")

    for a, b, r in ((1, 2, 3), (1, 2, 4), (2, 3, 3)):
        m = b * (r - 2)
        lo, hi = m + 1, floor(Fraction(16, 5) * m) + 1
        delta = threshold_delta_r(a, b, r)
        signs = [alpha(p, a, b, r) > 0 for p in range(1, hi + 3)]
        flips = sum(1 for u, v in zip(signs, signs[1:]) if u != v)
        single = flips == 1 and not signs[0]
        in_bracket = lo <= delta <= hi
        ok &= report(7, single, f"(a,b,r)=({a},{b},{r}): alpha_p changes sign once")
        ok &= report(
            7, in_bracket,
            f"(a,b,r)=({a},{b},{r}): delta_r = {delta} in [{lo}, {hi}]"
            + ("" if in_bracket else f"; alpha_1..alpha_{delta + 1} = {[str(alpha(p, a, b, r)) for p in range(1, delta + 2)]}"),
        )
    assert stop()
    assert ok


def test_criterion_8_del_pezzo():
    stop = timed(5, 8)
    checks = []
    p2_ample = sorted(to_labels(P2, d) for d, ok in enumerate_pairs(P2) if ok)
    checks.append(("P2 has six pairs", p2_ample == sorted([["D0"], ["D1"], ["D2"], ["D0", "D1"], ["D0", "D2"], ["D1", "D2"]])))
    clauses_ok = True
    for r in range(6):
        kind = hirzebruch(r)
        got = {frozenset(to_labels(kind, d)): ok for d, ok in enumerate_pairs(kind)}
        expected = {
            frozenset(): r <= 1, frozenset({"D0"}): r <= 1,
            frozenset({"D1"}): r == 0, frozenset({"D3"}): r == 0,
            frozenset({"D0", "D1"}): r == 0, frozenset({"D0", "D3"}): r == 0,
            frozenset({"D2"}): True, frozenset({"D1", "D2"}): True, frozenset({"D2", "D3"}): True,
            frozenset({"D0", "D2"}): False, frozenset({"D1", "D3"}): False,
        }
        clauses_ok &= got == expected
    checks.append(("Hirzebruch clauses for r = 0..5", clauses_ok))
    checks.append(("P2 D_i polystable, not stable", all(
        delpezzo_report(P2, [d]).verdict.kind is Kind.STRICTLY_SEMISTABLE
        and delpezzo_report(P2, [d]).verdict.polystable is Polystable.YES for d in ("D0", "D1", "D2"))))
    families = [["D0"], ["D1"], ["D2"], ["D3"], ["D0", "D1"], ["D0", "D3"], ["D1", "D2"], ["D2", "D3"]]
    checks.append(("F0 eight families polystable", all(
        delpezzo_report(hirzebruch(0), f).verdict.polystable is Polystable.YES for f in families)))
    f1 = delpezzo_report(hirzebruch(1), ["D0"])
    checks.append(("F1 / D0 stable", f1.verdict.kind is Kind.STABLE and f1.nu == 1))
    checks.append(("F_r / D2 unstable at nu = 2", all(
        delpezzo_report(hirzebruch(r), ["D2"]).verdict.kind is Kind.UNSTABLE
        and delpezzo_report(hirzebruch(r), ["D2"]).nu == 2 for r in range(1, 6))))
    checks.append(("F_r / D2+D1, D2+D3 unstable", all(
        delpezzo_report(hirzebruch(r), pair).verdict.kind is Kind.UNSTABLE
        for r in range(1, 6) for pair in (["D2", "D1"], ["D2", "D3"]))))
    for name, ok in checks:
        report(8, ok, name)
    assert stop()
    assert all(ok for _, ok in checks)


def test_criterion_9_descartes():
    # make sure criteria 1-3 have contributed, even when this test runs alone
    if not SEEN_POLYS:
        test_criterion_1_product_case()
        test_criterion_2_dvr_case()
        test_criterion_3_dv0_cases()
    x = sympy.Symbol("x")
    bad = []
    checked = 0
    for name, p in SEEN_POLYS:
        if p.is_zero() or p.degree < 1:
            continue
        cs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
        positive = [root for root in sympy.real_roots(sympy.Poly(cs, x)) if root > 0]
        changes = descartes_sign_changes(p)
        checked += 1
        if len(positive) > changes or (changes - len(positive)) % 2:
            bad.append(name)
    unique = all(descartes_sign_changes(e.poly) == 1 for e in SEEN_ENDPOINTS)
    ok1 = report(9, not bad, f"{checked} polynomials: root count <= sign changes, same parity; failures {bad[:3]}")
    ok2 = report(9, unique and bool(SEEN_ENDPOINTS), f"{len(SEEN_ENDPOINTS)} algebraic endpoints have one sign change")
    assert ok1 and ok2
