"""Value types for automata on infinite binary trees.

States, letters and tree nodes are arbitrary hashables internally; the text
formats in :mod:`treeauto.textio` need whitespace-free string names.  All
collections are kept in declaration order, which fixes canonical transition
indices and makes every enumeration reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Hashable, Mapping, NamedTuple, Optional, Sequence

import networkx as nx

EPS, LEFT, RIGHT = "EPS", "L", "R"
DIRECTIONS = (EPS, LEFT, RIGHT)


class AutomatonError(ValueError):
    """Raised when an automaton, tree or game violates its invariants."""


class ShiftUnavailable(AutomatonError):
    pass


class AlphabetMismatch(AutomatonError):
    pass


class Transition(NamedTuple):
    """NTA transition ``(q, q_L, a, q_R)``."""

    src: Hashable
    left: Hashable
    letter: str
    right: Hashable


class AtaTransition(NamedTuple):
    src: Hashable
    letter: str
    dir: str
    dst: Hashable


def _check_alphabet(alphabet: Sequence[str]) -> tuple:
    alphabet = tuple(alphabet)
    if not alphabet:
        raise AutomatonError("alphabet must be non-empty")
    if len(set(alphabet)) != len(alphabet):
        raise AutomatonError(f"duplicate symbols in alphabet {alphabet}")
    for a in alphabet:
        if not isinstance(a, str) or not a or any(c.isspace() for c in a):
            raise AutomatonError(f"bad letter {a!r}")
    return alphabet


def _check_states(states) -> tuple:
    states = tuple(states)
    if len(set(states)) != len(states):
        raise AutomatonError("duplicate states")
    return states


@dataclass(frozen=True)
class Nta:
    """Nondeterministic parity tree automaton."""

    name: str
    alphabet: tuple
    states: tuple
    priority: Mapping[Hashable, int]
    initial: Hashable
    transitions: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "states", _check_states(self.states))
        trans = tuple(Transition(*t) for t in self.transitions)
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "priority", dict(self.priority))
        known = set(self.states)
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} not declared")
        if set(self.priority) != known:
            raise AutomatonError("priority map must be total on states")
        if any(not isinstance(p, int) or p < 0 for p in self.priority.values()):
            raise AutomatonError("priorities must be natural numbers")
        letters = set(self.alphabet)
        for t in trans:
            if not {t.src, t.left, t.right} <= known:
                raise AutomatonError(f"transition {t} uses undeclared state")
            if t.letter not in letters:
                raise AutomatonError(f"transition {t} uses unknown letter")
        if len(set(trans)) != len(trans):
            raise AutomatonError("duplicate transitions")

    def transitions_from(self, q, a) -> list[int]:
        """Canonical indices of the transitions starting from ``(q, a)``."""
        return [k for k, t in enumerate(self.transitions) if t.src == q and t.letter == a]

    def index(self) -> "IndexPair":
        values = self.priority.values()
        return IndexPair(min(values), max(values))


@dataclass(frozen=True)
class Ata:
    """Alternating parity tree automaton with ε/L/R moves."""

    name: str
    alphabet: tuple
    states: tuple
    eve: frozenset
    initial: Hashable
    priority: Mapping[Hashable, int]
    transitions: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "states", _check_states(self.states))
        object.__setattr__(self, "eve", frozenset(self.eve))
        object.__setattr__(self, "priority", dict(self.priority))
        trans = tuple(AtaTransition(*t) for t in self.transitions)
        object.__setattr__(self, "transitions", trans)
        known = set(self.states)
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} not declared")
        if not self.eve <= known:
            raise AutomatonError("Eve states must be declared states")
        if set(self.priority) != known:
            raise AutomatonError("priority map must be total on states")
        if any(not isinstance(p, int) or p < 0 for p in self.priority.values()):
            raise AutomatonError("priorities must be natural numbers")
        letters = set(self.alphabet)
        covered = set()
        for t in trans:
            if t.src not in known or t.dst not in known:
                raise AutomatonError(f"transition {t} uses undeclared state")
            if t.letter not in letters:
                raise AutomatonError(f"transition {t} uses unknown letter")
            if t.dir not in DIRECTIONS:
                raise AutomatonError(f"transition {t} has bad direction")
            covered.add((t.src, t.letter))
        if len(set(trans)) != len(trans):
            raise AutomatonError("duplicate transitions")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in covered:
                    raise AutomatonError(f"no transition from ({q!r}, {a!r})")

    @property
    def adam(self) -> frozenset:
        return frozenset(self.states) - self.eve

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        g.add_edges_from((t.src, t.dst) for t in self.transitions)
        return g


@dataclass(frozen=True)
class RegularTree:
    """Finite pointed system denoting its infinite binary unfolding."""

    name: str
    alphabet: tuple
    nodes: tuple
    root: Hashable
    label: Mapping[Hashable, str]
    left: Mapping[Hashable, Hashable]
    right: Mapping[Hashable, Hashable]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "nodes", _check_states(self.nodes))
        for attr in ("label", "left", "right"):
            object.__setattr__(self, attr, dict(getattr(self, attr)))
        known = set(self.nodes)
        if self.root not in known:
            raise AutomatonError(f"root {self.root!r} is not a node")
        for attr in ("label", "left", "right"):
            if set(getattr(self, attr)) != known:
                raise AutomatonError(f"{attr} map must be total on nodes")
        if not set(self.label.values()) <= set(self.alphabet):
            raise AutomatonError("label outside the alphabet")
        if not (set(self.left.values()) | set(self.right.values())) <= known:
            raise AutomatonError("successor outside the node set")

    def succ(self, node, direction):
        if direction == EPS:
            return node
        return self.left[node] if direction == LEFT else self.right[node]

    def rerooted(self, node) -> "RegularTree":
        """The subtree ``t|v`` for a vertex reaching ``node``."""
        return replace(self, name=f"{self.name}@{node}", root=node)

    def at(self, path: str) -> str:
        """Label of the vertex addressed by a string over ``L``/``R``."""
        node = self.root
        for d in path:
            node = self.succ(node, d)
        return self.label[node]


@dataclass(frozen=True, order=True)
class IndexPair:
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise AutomatonError(f"bad index ({self.lo}, {self.hi})")

    def odd_values(self) -> list[int]:
        return [k for k in range(self.lo, self.hi + 1) if k % 2 == 1]


@dataclass(frozen=True)
class SccInfo:
    states: frozenset
    priorities: frozenset
    shift: Optional[int]
    fits_band1: bool
    fits_band2: bool
    trivial: bool = False


@dataclass(frozen=True)
class SccReport:
    sccs: tuple
    verdict: bool = field(default=False)


def _choose_shift(prios, band: IndexPair):
    lo, hi = min(prios), max(prios)
    span = hi - lo
    options = []
    reach = band.hi + hi + 4
    for s in range(-reach - (reach % 2), reach + 1, 2):
        in1 = band.lo <= lo + s and hi + s <= band.hi
        in2 = band.lo + 1 <= lo + s and hi + s <= band.hi + 1
        if in1 or in2:
            options.append((abs(s), s, in1, in2))
    if span > band.hi - band.lo or not options:
        return None, False, False
    _, s, in1, in2 = min(options)
    return s, in1, in2


def reachable_states(aut: Ata) -> set:
    g = aut.graph()
    return nx.descendants(g, aut.initial) | {aut.initial}


def scc_comp_check(aut: Ata, band: IndexPair) -> SccReport:
    """Check that every reachable SCC fits ``band`` or ``band + 1`` up to an even shift."""
    g = aut.graph().subgraph(reachable_states(aut))
    order = {q: k for k, q in enumerate(aut.states)}
    infos = []
    for comp in nx.strongly_connected_components(g):
        comp = frozenset(comp)
        prios = frozenset(aut.priority[q] for q in comp)
        (single,) = comp if len(comp) == 1 else (None,)
        trivial = len(comp) == 1 and not g.has_edge(single, single)
        shift, in1, in2 = _choose_shift(prios, band)
        if trivial and shift is None:  # pragma: no cover - single priorities always fit
            shift = 0
        infos.append(SccInfo(comp, prios, shift, in1, in2, trivial))
    infos.sort(key=lambda c: min(order[q] for q in c.states))
    return SccReport(tuple(infos), all(c.shift is not None for c in infos))


def normalize_shift(aut: Ata, band: IndexPair) -> Ata:
    """Apply each reachable SCC's chosen even shift to its priorities."""
    report = scc_comp_check(aut, band)
    if not report.verdict:
        raise ShiftUnavailable(f"{aut.name} is not Comp{(band.lo, band.hi)} up to shifts")
    priority = dict(aut.priority)
    for info in report.sccs:
        for q in info.states:
            priority[q] += info.shift
    return replace(aut, priority=priority)
