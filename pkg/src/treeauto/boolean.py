"""Boolean combinations of alternating automata and separator families."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .analysis import productive_pairs
from .core import EPS, AlphabetMismatch, Ata, AutomatonError, Nta


class FamilyError(AutomatonError):
    pass


class MissingPair(FamilyError):
    pass


class TransitionMismatch(FamilyError):
    pass


def accept_all(alphabet, name: str = "all") -> Ata:
    """Weak automaton accepting every tree: one Eve state, priority 0, ε self-loops."""
    return Ata(name, alphabet, ["top"], {"top"}, "top", {"top": 0},
               [("top", a, EPS, "top") for a in alphabet])


def reject_all(alphabet, name: str = "none") -> Ata:
    return complement(accept_all(alphabet), name)


def complement(c: Ata, name: Optional[str] = None) -> Ata:
    """Dual automaton: owners swapped, priorities shifted by one."""
    return Ata(name or f"{c.name}__not", c.alphabet, c.states, c.adam, c.initial,
               {q: p + 1 for q, p in c.priority.items()}, c.transitions)


def _combine(c1: Ata, c2: Ata, eve_root: bool) -> Ata:
    if set(c1.alphabet) != set(c2.alphabet):
        raise AlphabetMismatch(f"{c1.name} and {c2.name} use different alphabets")
    tag1, tag2 = c1.name, c2.name
    if tag1 == tag2:
        tag2 += "_2"
    rename1 = {q: f"{tag1}.{q}" for q in c1.states}
    rename2 = {q: f"{tag2}.{q}" for q in c2.states}
    fresh = f"{c1.name}_{c2.name}__{'or' if eve_root else 'and'}"
    taken = set(rename1.values()) | set(rename2.values())
    suffix = 1
    root = fresh
    while root in taken:
        root = f"{fresh}{suffix}"
        suffix += 1
    states = [root] + list(rename1.values()) + list(rename2.values())
    eve = {rename1[q] for q in c1.eve} | {rename2[q] for q in c2.eve}
    if eve_root:
        eve.add(root)
    prio = {root: 0}
    prio.update({rename1[q]: p for q, p in c1.priority.items()})
    prio.update({rename2[q]: p for q, p in c2.priority.items()})
    trans = []
    for a in c1.alphabet:
        trans += [(root, a, EPS, rename1[c1.initial]), (root, a, EPS, rename2[c2.initial])]
    trans += [(rename1[t.src], t.letter, t.dir, rename1[t.dst]) for t in c1.transitions]
    trans += [(rename2[t.src], t.letter, t.dir, rename2[t.dst]) for t in c2.transitions]
    return Ata(root, c1.alphabet, states, eve, root, prio, list(dict.fromkeys(trans)))


def intersect(c1: Ata, c2: Ata) -> Ata:
    return _combine(c1, c2, eve_root=False)


def union(c1: Ata, c2: Ata) -> Ata:
    return _combine(c1, c2, eve_root=True)


@dataclass(frozen=True)
class SeparatorFamily:
    """For each productive pair of ``owner``: the transitions from it and their automata."""

    owner: str
    entries: Mapping

    def automaton(self, k: int) -> Ata:
        for members in self.entries.values():
            for idx, c in members:
                if idx == k:
                    return c
        raise KeyError(k)

    def replace_member(self, k: int, c: Ata) -> "SeparatorFamily":
        entries = {pair: [(idx, c if idx == k else old) for idx, old in members]
                   for pair, members in self.entries.items()}
        return SeparatorFamily(self.owner, entries)


def check_family_shape(a: Nta, entries: Mapping) -> None:
    """Entries must be exactly the productive pairs, each listing all its transitions."""
    pairs = productive_pairs(a).productive_pairs
    for pair in pairs:
        if pair not in entries:
            raise MissingPair(f"no separators for productive pair {pair}")
    for pair, members in entries.items():
        if pair not in pairs:
            raise TransitionMismatch(f"{pair} is not a productive pair of {a.name}")
        expected = a.transitions_from(*pair)
        if [k for k, _ in members] != expected:
            raise TransitionMismatch(
                f"pair {pair}: got transitions {[k for k, _ in members]}, expected {expected}")
        for _, c in members:
            if c is not None and set(c.alphabet) != set(a.alphabet):
                raise AlphabetMismatch(f"separator {c.name} uses a different alphabet")


def partition_family(a: Nta, pair_separators: Mapping) -> SeparatorFamily:
    """Turn pairwise separators into a disjoint, covering family.

    With separators S1..SK for the transitions from a pair, member k is
    ``Sk ∩ ¬S1 ∩ ... ∩ ¬S(k-1)``; the last member is the complement of the
    union of the others, so SK is never read and may be None.
    """
    check_family_shape(a, pair_separators)
    entries = {}
    for pair in sorted(pair_separators, key=lambda p: (a.states.index(p[0]), a.alphabet.index(p[1]))):
        members = pair_separators[pair]
        ks = [k for k, _ in members]
        seps = [s for _, s in members]
        if len(ks) == 1:
            out = [accept_all(a.alphabet, f"all_{a.name}_{ks[0]}")]
        else:
            if any(s is None for s in seps[:-1]):
                raise MissingPair(f"pair {pair} lacks a separator before the last slot")
            out = []
            for j in range(len(ks)):
                parts = [] if j == len(ks) - 1 else [seps[j]]
                parts += [complement(s) for s in seps[:j]]
                out.append(_conjunction(parts))
        entries[pair] = [(k, _rename(c, f"C_{a.name}_{k}")) for k, c in zip(ks, out)]
    return SeparatorFamily(a.name, entries)


def _conjunction(parts):
    acc = parts[0]
    for c in parts[1:]:
        acc = intersect(acc, c)
    return acc


def _rename(c: Ata, name: str) -> Ata:
    return Ata(name, c.alphabet, c.states, c.eve, c.initial, c.priority, c.transitions)
