import pytest
from hypothesis import given, settings, strategies as st

from treeauto.core import (Ata, AutomatonError, IndexPair, Nta, RegularTree, ShiftUnavailable,
                           normalize_shift, scc_comp_check)
from treeauto.verify import member_ata, random_corpus

from gen import random_ata

AB = ("a", "b")


def loops(states, prio, eve=(), extra=()):
    trans = [(q, a, "EPS", q) for q in states for a in AB] + list(extra)
    return Ata("t", AB, states, set(eve), states[0], prio, trans)


def brute_fits(prios, band):
    """Shift search over a window wide enough for any band and priority set."""
    lim = max(prios) + band.hi + 2
    for s in range(-lim, lim + 1):
        if s % 2:
            continue
        shifted = {p + s for p in prios}
        if shifted <= set(range(band.lo, band.hi + 1)) or \
                shifted <= set(range(band.lo + 1, band.hi + 2)):
            return True
    return False


def test_nta_invariants():
    with pytest.raises(AutomatonError):
        Nta("x", AB, ["p"], {"p": 0}, "q", [])
    with pytest.raises(AutomatonError):
        Nta("x", AB, ["p"], {"p": 0}, "p", [("p", "p", "c", "p")])
    with pytest.raises(AutomatonError):
        Nta("x", AB, ["p"], {"p": 0}, "p", [("p", "p", "a", "p")] * 2)
    with pytest.raises(AutomatonError):
        Nta("x", ("a", "a"), ["p"], {"p": 0}, "p", [])


def test_ata_totality():
    with pytest.raises(AutomatonError):
        Ata("x", AB, ["p"], {"p"}, "p", {"p": 0}, [("p", "a", "EPS", "p")])


def test_tree_invariants():
    with pytest.raises(AutomatonError):
        RegularTree("t", AB, ["n"], "n", {"n": "a"}, {"n": "m"}, {"n": "n"})
    t = RegularTree("t", AB, ["n", "m"], "n", {"n": "a", "m": "b"},
                    {"n": "m", "m": "m"}, {"n": "n", "m": "n"})
    assert t.at("") == "a" and t.at("L") == "b" and t.at("LR") == "a"
    assert t.rerooted("m").at("") == "b"


def test_single_state_fits_weak_band():
    assert scc_comp_check(loops(["s"], {"s": 0}, eve=["s"]), IndexPair(0, 0)).verdict


def test_span_one_scc_exceeds_width_zero():
    c = loops(["x", "y"], {"x": 2, "y": 3}, extra=[("x", "a", "L", "y"), ("y", "a", "L", "x")])
    report = scc_comp_check(c, IndexPair(2, 2))
    assert not report.verdict
    assert [info.shift for info in report.sccs] == [None]


def test_separate_sccs_shift_independently():
    c = loops(["x", "y"], {"x": 2, "y": 3}, extra=[("x", "b", "R", "y")])
    report = scc_comp_check(c, IndexPair(0, 0))
    assert report.verdict
    assert [(set(i.states), i.shift) for i in report.sccs] == [({"x"}, -2), ({"y"}, -2)]
    for info in report.sccs:
        assert brute_fits(info.priorities, IndexPair(0, 0))


def test_unreachable_sccs_ignored():
    c = loops(["x", "y"], {"x": 0, "y": 3}, extra=[("y", "a", "L", "x"), ("y", "b", "L", "y")])
    report = scc_comp_check(c, IndexPair(0, 0))
    assert {q for i in report.sccs for q in i.states} == {"x"}


def test_normalize_examples():
    c = loops(["x", "y"], {"x": 2, "y": 3}, extra=[("x", "b", "R", "y")])
    n = normalize_shift(c, IndexPair(0, 0))
    assert n.priority == {"x": 0, "y": 1}
    already = loops(["s"], {"s": 1})
    assert normalize_shift(already, IndexPair(0, 1)) == already
    bad = loops(["x", "y"], {"x": 2, "y": 3}, extra=[("x", "a", "L", "y"), ("y", "a", "L", "x")])
    with pytest.raises(ShiftUnavailable):
        normalize_shift(bad, IndexPair(2, 2))


def test_normalize_preserves_membership():
    corpus = random_corpus(AB, 200, seed=5)
    checked = 0
    for seed in range(40):
        c = random_ata(seed, max_priority=5)
        band = IndexPair(1, 4)
        if not scc_comp_check(c, band).verdict:
            continue
        n = normalize_shift(c, band)
        for info in scc_comp_check(n, band).sccs:
            assert info.shift == 0
        trees = corpus.trees if checked == 0 else corpus.trees[:25]
        assert all(member_ata(t, c) == member_ata(t, n) for t in trees)
        checked += 1
    assert checked >= 5


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 4), st.integers(0, 3))
def test_band_monotone_and_shift_invariant(seed, lo, width):
    c = random_ata(seed, n=5, max_priority=6, fanout=3)
    band = IndexPair(lo, lo + width)
    verdict = scc_comp_check(c, band).verdict
    if verdict:
        assert scc_comp_check(c, IndexPair(lo, lo + width + 2)).verdict
        if lo >= 2:
            assert scc_comp_check(c, IndexPair(lo - 2, lo + width)).verdict
    assert scc_comp_check(c, IndexPair(2, 2)).verdict == scc_comp_check(c, IndexPair(0, 0)).verdict
    report = scc_comp_check(c, band)
    for info in report.sccs:
        assert (info.shift is not None) == brute_fits(info.priorities, band)
