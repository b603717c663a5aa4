"""Membership on regular trees, run counting, corpora and the equivalence harness."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .analysis import divergence_automaton
from .boolean import SeparatorFamily
from .core import LEFT, RIGHT, AlphabetMismatch, Ata, Nta, RegularTree
from .games import ADAM, EVE, Lcg, make_game, solve_game


def _same_alphabet(t: RegularTree, aut) -> None:
    if set(t.alphabet) != set(aut.alphabet):
        raise AlphabetMismatch(f"tree {t.name} and {aut.name} use different alphabets")


def nta_game(t: RegularTree, a: Nta, starts=None):
    """Membership game on (node, state) positions reachable from ``starts``."""
    _same_alphabet(t, a)
    table = {}
    for k, tr in enumerate(a.transitions):
        table.setdefault((tr.src, tr.letter), []).append(k)
    starts = [(t.root, a.initial)] if starts is None else starts
    owner, prio, edges = {}, {}, []
    queue = deque(starts)
    for s in starts:
        owner[s] = EVE
    while queue:
        node, q = pos = queue.popleft()
        prio[pos] = a.priority[q]
        for k in table.get((q, t.label[node]), ()):
            tr = a.transitions[k]
            mid = (node, q, k)
            owner[mid], prio[mid] = ADAM, 0
            edges.append((pos, mid))
            for child in ((t.left[node], tr.left), (t.right[node], tr.right)):
                edges.append((mid, child))
                if child not in owner:
                    owner[child] = EVE
                    queue.append(child)
    return make_game(owner, prio, edges, starts[0], f"{a.name}_on_{t.name}")


def nta_winning(t: RegularTree, a: Nta) -> set:
    """Pairs (node, q) such that the tree re-rooted at node is accepted from q."""
    starts = [(n, q) for n in t.nodes for q in a.states]
    sol = solve_game(nta_game(t, a, starts))
    return {s for s in starts if sol.winner[s] == EVE}


def member_nta(t: RegularTree, a: Nta, start=None) -> bool:
    start = a.initial if start is None else start
    g = nta_game(t, a, [(t.root, start)])
    return solve_game(g).winner[t.root, start] == EVE


def ata_game(t: RegularTree, c: Ata, starts=None):
    _same_alphabet(t, c)
    table = {}
    for tr in c.transitions:
        table.setdefault((tr.src, tr.letter), []).append(tr)
    starts = [(t.root, c.initial)] if starts is None else starts
    owner, prio, edges = {}, {}, []
    seen = set(starts)
    queue = deque(starts)
    while queue:
        node, q = pos = queue.popleft()
        owner[pos] = EVE if q in c.eve else ADAM
        prio[pos] = c.priority[q]
        for tr in table[q, t.label[node]]:
            nxt = (t.succ(node, tr.dir), tr.dst)
            edges.append((pos, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return make_game(owner, prio, edges, starts[0], f"{c.name}_on_{t.name}")


def ata_winning(t: RegularTree, c: Ata) -> set:
    """Nodes whose re-rooted tree is accepted by ``c``."""
    starts = [(n, c.initial) for n in t.nodes]
    sol = solve_game(ata_game(t, c, starts))
    return {n for n, q in starts if sol.winner[n, q] == EVE}


def member_ata(t: RegularTree, c: Ata) -> bool:
    return solve_game(ata_game(t, c)).winner[t.root, c.initial] == EVE


class RunCount(enum.Enum):
    ZERO = 0
    ONE = 1
    MANY = 2


def count_runs(t: RegularTree, a: Nta, divergence: Optional[Nta] = None) -> RunCount:
    """Number of accepting runs from the initial state, capped at MANY."""
    if not member_nta(t, a):
        return RunCount.ZERO
    d = divergence if divergence is not None else divergence_automaton(a)
    return RunCount.MANY if member_nta(t, d) else RunCount.ONE


def random_regular_tree(alphabet, size: int, seed: int) -> RegularTree:
    """Deterministic random regular tree on ``size`` nodes.

    Node ``nk`` draws its label, then its left and right successor, from
    :class:`~treeauto.games.Lcg` seeded with ``seed``.
    """
    if size < 1:
        raise ValueError("size must be positive")
    alphabet = tuple(alphabet)
    rng = Lcg(seed)
    nodes = [f"n{k}" for k in range(size)]
    label, left, right = {}, {}, {}
    for n in nodes:
        label[n] = alphabet[rng.below(len(alphabet))]
        left[n] = nodes[rng.below(size)]
        right[n] = nodes[rng.below(size)]
    return RegularTree(f"rt_{size}_{seed}", alphabet, nodes, "n0", label, left, right)


@dataclass(frozen=True)
class Corpus:
    trees: tuple
    provenance: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        if len({frozenset(t.alphabet) for t in self.trees}) > 1:
            raise AlphabetMismatch("corpus trees must share one alphabet")

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)


def random_corpus(alphabet, count: int, seed: int = 0, max_size: int = 8) -> Corpus:
    """Tree k has size ``1 + k % max_size`` and seed ``seed + k``."""
    trees, prov = [], []
    for k in range(count):
        size = 1 + k % max_size
        trees.append(random_regular_tree(alphabet, size, seed + k))
        prov.append((seed + k, size))
    return Corpus(trees, tuple(prov))


@dataclass(frozen=True)
class Violation:
    tree: str
    node: str
    pair: tuple
    obligation: str


def _family_violations(a: Nta, family: SeparatorFamily, t: RegularTree) -> list:
    win_a = nta_winning(t, a)
    out = []
    for pair, members in family.entries.items():
        accepted = {k: ata_winning(t, c) for k, c in members}
        for n in t.nodes:
            hits = [k for k, _ in members if n in accepted[k]]
            if len(hits) != 1:
                what = "uncovered" if not hits else f"overlap{hits}"
                out.append(Violation(t.name, n, pair, f"partition:{what}"))
            if t.label[n] != pair[1]:
                continue
            for k, _ in members:
                tr = a.transitions[k]
                in_lk = ((t.left[n], tr.left) in win_a and (t.right[n], tr.right) in win_a)
                if in_lk and n not in accepted[k]:
                    out.append(Violation(t.name, n, pair, f"containment:{k}"))
    return out


@dataclass
class FamilyReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_family(a: Nta, family: SeparatorFamily, corpus) -> FamilyReport:
    """Check the family obligations on every subtree of every corpus tree.

    For each productive pair: exactly one member accepts the subtree, and a
    subtree with an accepting run using transition k at its root is
    accepted by member k.  A corpus tree's subtrees are its re-rootings.
    """
    report = FamilyReport()
    for t in corpus:
        report.checked += 1
        report.violations += _family_violations(a, family, t)
    return report


@dataclass(frozen=True)
class Mismatch:
    tree: str
    in_a: bool
    in_r: bool
    blamed: bool

    @property
    def tag(self) -> str:
        return "BLAME_FAMILY" if self.blamed else "UNEXPLAINED"


@dataclass
class EquivalenceReport:
    total: int = 0
    agreements: int = 0
    mismatches: list = field(default_factory=list)
    family_blame: list = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.total == 0

    @property
    def blamed(self) -> int:
        return sum(1 for m in self.mismatches if m.blamed)

    def summary(self) -> str:
        return (f"RESULT agree={self.agreements} mismatch={len(self.mismatches)} "
                f"blamed={self.blamed}")


def verify_equivalence(a: Nta, r: Ata, corpus, family: Optional[SeparatorFamily] = None
                       ) -> EquivalenceReport:
    """Compare membership in ``a`` and ``r`` tree by tree.

    Mismatching trees on which the family breaks an obligation are blamed
    on the family.
    """
    report = EquivalenceReport()
    for t in corpus:
        report.total += 1
        in_a, in_r = member_nta(t, a), member_ata(t, r)
        if in_a == in_r:
            report.agreements += 1
            continue
        blame = _family_violations(a, family, t) if family is not None else []
        report.family_blame += [(v.tree, v.pair, f"{v.obligation}@{v.node}") for v in blame]
        report.mismatches.append(Mismatch(t.name, in_a, in_r, bool(blame)))
    return report


def nta_as_ata(a: Nta) -> Ata:
    """The NTA read as an alternating automaton: Eve picks, Adam picks a direction."""
    states = list(a.states)
    prio = dict(a.priority)
    eve = set(a.states)
    trans = []
    lose = "__lose"
    for k, t in enumerate(a.transitions):
        mid = f"__t{k}"
        states.append(mid)
        prio[mid] = 0
        trans += [(t.src, t.letter, "EPS", mid), (mid, t.letter, LEFT, t.left),
                  (mid, t.letter, RIGHT, t.right)]
    states.append(lose)
    eve.add(lose)
    prio[lose] = 1
    covered = {(s, l) for s, l, _, _ in trans}
    for s in states:
        for letter in a.alphabet:
            if (s, letter) not in covered:
                trans.append((s, letter, "EPS", lose))
    return Ata(f"{a.name}_ata", a.alphabet, states, eve, a.initial, prio, trans)
