import itertools

import pytest

from treeauto import datasets
from treeauto.analysis import (BadTransition, Monitor, delta_rooted, divergence_automaton,
                               emptiness_witness, is_disjoint, is_empty_after_prune,
                               is_unambiguous, lasso_counterexamples, lasso_expected,
                               live_states, make_monitor, productive_pairs, productive_witness,
                               prune, run_is_accepting)
from treeauto.core import IndexPair, Nta
from treeauto.verify import RunCount, count_runs, member_nta, random_corpus

from gen import random_nta
from oracles import all_small_trees, constant_tree, deterministic_member, lasso_limsups

AB = ("a", "b")


def with_extra(a, states=(), trans=()):
    prio = dict(a.priority)
    prio.update(dict(states))
    return Nta(a.name + "x", a.alphabet, a.states + tuple(q for q, _ in states), prio,
               a.initial, a.transitions + tuple(trans))


def test_live_states_inf(inf):
    # oracle: the all-a tree is accepted from each state
    all_a = constant_tree("a", AB)
    assert all(deterministic_member(all_a, inf, q) for q in inf.states)
    assert live_states(inf) == {"s1", "s2"}


def test_dead_states():
    a = Nta("d", AB, ["p", "z"], {"p": 1, "z": 0}, "p",
            [("p", "p", "a", "p"), ("p", "p", "b", "p")])
    assert live_states(a) == set()
    assert productive_pairs(a).productive_pairs == frozenset()


def test_liveness_witnesses_and_small_tree_search():
    small = list(all_small_trees(AB, 2))
    for seed in range(30):
        a = random_nta(seed)
        live = live_states(a)
        for q in a.states:
            if q in live:
                w, run = emptiness_witness(a, q, with_run=True)
                assert len(w.nodes) <= len(a.states) * len(a.alphabet) + 1
                assert member_nta(w, a, q)
                assert run_is_accepting(w, a, run, q)
            else:
                assert not any(member_nta(t, a, q) for t in small[:60])


def test_productive_pairs_examples(inf):
    assert productive_pairs(inf).productive_pairs == {
        (q, x) for q in ("s1", "s2") for x in AB}
    unreachable = with_extra(inf, [("u", 2)], [("u", "u", "a", "u")])
    assert "u" in live_states(unreachable)
    assert not any(q == "u" for q, _ in productive_pairs(unreachable).productive_pairs)
    dead_sibling = with_extra(inf, [("r", 2), ("d", 1)],
                              [("s1", "r", "a", "d"), ("r", "r", "a", "r")])
    pairs = productive_pairs(dead_sibling).productive_pairs
    assert ("r", "a") not in pairs and "d" not in live_states(dead_sibling)


def test_productive_witnesses_exhibit_runs(inf, p4, nxt, eb):
    for a in (inf, p4, nxt, eb):
        report = productive_pairs(a)
        for q, letter in report.productive_pairs:
            tree, node, run = productive_witness(a, q, letter)
            assert run[node] == q and tree.label[node] == letter
            assert run_is_accepting(tree, a, run)
            assert member_nta(tree, a)
        for q in a.states:
            for letter in a.alphabet:
                if (q, letter) not in report.productive_pairs:
                    assert productive_witness(a, q, letter) is None


def test_prune(inf):
    assert prune(inf) == inf
    dead_sibling = with_extra(inf, [("r", 2), ("d", 1)],
                              [("s1", "r", "a", "d"), ("r", "r", "a", "r")])
    pruned = prune(dead_sibling)
    assert ("s1", "r", "a", "d") not in pruned.transitions
    assert "d" not in pruned.states
    corpus = random_corpus(AB, 100, seed=3)
    for seed in range(10):
        a = random_nta(seed)
        p = prune(a)
        assert all(member_nta(t, a) == member_nta(t, p) for t in corpus.trees[:40])
        assert is_empty_after_prune(p) == (a.initial not in live_states(a))


# monitors -----------------------------------------------------------------

def test_two_phase_monitor_examples():
    m = make_monitor(IndexPair(1, 2), IndexPair(1, 2))
    assert len(m.states) == 3
    for v, expected in [([(2, 2)], True), ([(2, 1), (1, 2)], True), ([(2, 1)], False)]:
        assert (max(lasso_limsups([], v)) % 2 == 0 and min(lasso_limsups([], v)) % 2 == 0) \
            == expected
        states = m.run(v * 12)
        assert (max(m.out[s] for s in states[-2 * len(v):]) % 2 == 0) == expected


@pytest.mark.parametrize("r1,r2", [((1, 2), (1, 2)), ((1, 3), (0, 2)), ((0, 2), (2, 3))])
def test_lasso_search_matches_naive(r1, r2):
    m = make_monitor(IndexPair(*r1), IndexPair(*r2))
    assert lasso_counterexamples(m, 4) == []
    assert lasso_counterexamples(m, 4, naive=True) == []


def test_lasso_search_finds_broken_monitor():
    good = make_monitor(IndexPair(1, 4), IndexPair(1, 4))
    # a monitor that only watches the first component
    states = (0,) + tuple(range(1, 5))
    step = {(s, (p1, p2)): p1 for s in states for p1 in range(1, 5) for p2 in range(1, 5)}
    bad = Monitor(states, 0, step, {s: s for s in states}, good.range1, good.range2)
    found = lasso_counterexamples(bad, 3)
    naive = lasso_counterexamples(bad, 3, naive=True)
    assert found and naive
    # watching only the first component errs exactly when the second limsup is odd
    for u, v in found + naive:
        first, second = lasso_limsups(u, v)
        assert first % 2 == 0 and second % 2 == 1
        assert not lasso_expected(u, v)


def test_general_monitor_exhaustive():
    for r in [(1, 4), (0, 3), (2, 5)]:
        m = make_monitor(IndexPair(*r), IndexPair(*r))
        assert lasso_counterexamples(m, 6) == []


# delta-rooted, disjointness, ambiguity ---------------------------------------

def test_delta_rooted(inf):
    d0 = delta_rooted(inf, 0)
    assert inf.transitions[0] == ("s1", "s2", "a", "s2")
    assert member_nta(constant_tree("a", AB), d0)
    corpus = random_corpus(AB, 100, seed=4)
    for t in corpus:
        if t.label[t.root] == "b":
            assert not member_nta(t, d0)
        if member_nta(t, d0):
            assert member_nta(t, inf, "s1")
    with pytest.raises(BadTransition):
        delta_rooted(inf, 4)


def test_disjointness_examples(inf, eb, allb):
    disjoint, w = is_disjoint(inf, inf)
    assert not disjoint and member_nta(w, inf)
    all_b = constant_tree("b", AB)
    assert member_nta(all_b, allb) and not member_nta(all_b, eb)
    assert is_disjoint(eb, allb) == (True, None)
    empty = Nta("empty", AB, ["z"], {"z": 1}, "z", [])
    for a in (inf, eb, allb):
        assert is_disjoint(a, empty) == (True, None)


def test_disjoint_witnesses_on_random_pairs():
    for seed in range(25):
        a1, a2 = random_nta(seed), random_nta(seed + 1000, max_priority=4)
        disjoint, w = is_disjoint(a1, a2)
        if not disjoint:
            assert member_nta(w, a1) and member_nta(w, a2)
        else:
            for t in random_corpus(AB, 40, seed=seed):
                assert not (member_nta(t, a1) and member_nta(t, a2))


def test_ambiguity_examples(inf, eb):
    assert is_unambiguous(inf).unambiguous
    verdict = is_unambiguous(eb)
    assert not verdict.unambiguous
    assert count_runs(verdict.witness, eb) is RunCount.MANY
    # zero accepting runs: two initial transitions into dead states
    dead = Nta("dd", AB, ["i", "z"], {"i": 2, "z": 1}, "i",
               [("i", "z", "a", "z"), ("i", "i", "a", "z"), ("z", "z", "a", "z")])
    assert is_unambiguous(dead).unambiguous


def test_ambiguity_random():
    corpus = random_corpus(AB, 30, seed=9)
    for seed in range(30):
        a = random_nta(seed, density=3)
        verdict = is_unambiguous(a)
        d = divergence_automaton(a)
        if verdict.unambiguous:
            assert all(count_runs(t, a, d) is not RunCount.MANY for t in corpus)
        else:
            assert count_runs(verdict.witness, a, d) is RunCount.MANY


def test_transitions_from_a_pair_are_disjoint(inf, p4, nxt):
    checked = 0
    for a in (inf, p4, nxt):
        assert is_unambiguous(a).unambiguous
        for q, letter in productive_pairs(a).productive_pairs:
            for k1, k2 in itertools.combinations(a.transitions_from(q, letter), 2):
                assert is_disjoint(delta_rooted(a, k1), delta_rooted(a, k2))[0]
                checked += 1
    assert checked == 3 + 2
