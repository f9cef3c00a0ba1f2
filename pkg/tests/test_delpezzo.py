from fractions import Fraction

import pytest

from logstab.delpezzo import P2, delpezzo_report, enumerate_pairs, hirzebruch, to_labels
from logstab.stability import Kind, Polystable

F0_FAMILIES = [["D0"], ["D1"], ["D2"], ["D3"], ["D0", "D1"], ["D0", "D3"], ["D1", "D2"], ["D2", "D3"]]


def test_p2_has_six_log_del_pezzo_pairs():
    ample = [to_labels(P2, d) for d, ok in enumerate_pairs(P2) if ok]
    assert sorted(ample) == sorted([["D0"], ["D1"], ["D2"], ["D0", "D1"], ["D0", "D2"], ["D1", "D2"]])


@pytest.mark.parametrize("r", range(6))
def test_hirzebruch_enumeration(r):
    kind = hirzebruch(r)
    pairs = dict((frozenset(to_labels(kind, d)), ok) for d, ok in enumerate_pairs(kind))
    assert len(pairs) == 11
    assert pairs[frozenset({"D2"})]
    assert not pairs[frozenset({"D0", "D2"})] and not pairs[frozenset({"D1", "D3"})]
    assert pairs[frozenset()] == (r <= 1)
    assert pairs[frozenset({"D1"})] == (r == 0)


def test_p2_single_divisor_is_polystable_not_stable():
    for label in ("D0", "D1", "D2"):
        rep = delpezzo_report(P2, [label])
        assert rep.verdict.kind is Kind.STRICTLY_SEMISTABLE
        assert rep.verdict.polystable is Polystable.YES
        assert rep.nu is None


def test_f0_families_are_polystable():
    for labels in F0_FAMILIES:
        rep = delpezzo_report(hirzebruch(0), labels)
        assert rep.ample
        assert rep.verdict.polystable is Polystable.YES


def test_f1_d0_is_stable_at_one():
    rep = delpezzo_report(hirzebruch(1), ["D0"])
    assert rep.nu == 1
    assert rep.verdict.kind is Kind.STABLE


@pytest.mark.parametrize("r", range(1, 6))
def test_d2_cases_are_unstable(r):
    rep = delpezzo_report(hirzebruch(r), ["D2"])
    assert rep.nu == 2 and rep.verdict.kind is Kind.UNSTABLE
    for labels in (["D2", "D1"], ["D2", "D3"]):
        assert delpezzo_report(hirzebruch(r), labels).verdict.kind is Kind.UNSTABLE


def test_non_ample_pairs_have_no_verdict():
    rep = delpezzo_report(hirzebruch(3), ["D0", "D2"])
    assert not rep.ample and rep.verdict is None and rep.nu is None
    rep = delpezzo_report(hirzebruch(1), ["v0"])  # ray names work too
    assert rep.nu == Fraction(1)
