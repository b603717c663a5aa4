"""Alternating automaton R equivalent to an unambiguous parity NTA.

R's initial component simulates the NTA as a game: Eve proposes transitions,
Adam either follows one child or challenges the proposal, in which case the
play moves into the separator automaton of that transition.  Adam may also
fix, once, an odd bound m: afterwards a state of priority above m makes him
lose and a state of priority exactly m counts against Eve.

Each step of a round is reified as its own state, linked by ε-moves on the
current vertex:

    ENTRY(q, m)  -> SEL(q, m')          (Adam picks m' when m is unset)
    SEL(q, m')   -> CH(q, m', k)        (Eve picks transition k from (q, a))
    CH(q, m', k) -> separator of k      (Adam challenges)
                 -> ENTRY(child, m')    (Adam accepts and moves L or R)
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .analysis import productive_pairs
from .boolean import SeparatorFamily
from .core import EPS, LEFT, RIGHT, Ata, AutomatonError, IndexPair, Nta

UNSET = "_"
LOSE_EVE, LOSE_ADAM = "LOSE_EVE", "LOSE_ADAM"


class BadIndex(AutomatonError):
    pass


class FamilyMismatch(AutomatonError):
    pass


class RState(NamedTuple):
    kind: str  # ENTRY, SEL, CH, LOSE_EVE, LOSE_ADAM, SEP
    q: object = None
    m: object = None  # UNSET or an odd bound
    k: Optional[int] = None  # transition index for CH and SEP
    sep_state: object = None


def state_name(s: RState) -> str:
    if s.kind == "ENTRY":
        return f"E[{s.q},{s.m}]"
    if s.kind == "SEL":
        return f"S[{s.q},{s.m}]"
    if s.kind == "CH":
        return f"C[{s.q},{s.m},{s.k}]"
    if s.kind == "SEP":
        return f"sep{s.k}.{s.sep_state}"
    return s.kind


def build_r_layout(a: Nta, family: SeparatorFamily, band: Optional[IndexPair] = None):
    """Build R and return it with the map from its state names to :class:`RState`."""
    if band is None:
        idx = a.index()
        band = IndexPair(idx.lo, idx.hi + idx.hi % 2)
    if band.hi % 2 or not all(band.lo <= p <= band.hi for p in a.priority.values()):
        raise BadIndex(f"{a.name} priorities must lie in ({band.lo}, {band.hi}) with even top")
    pairs = productive_pairs(a).productive_pairs
    if set(family.entries) != set(pairs):
        raise FamilyMismatch("family entries differ from the productive pairs")
    for pair, members in family.entries.items():
        if [k for k, _ in members] != a.transitions_from(*pair):
            raise FamilyMismatch(f"family entry {pair} does not list its transitions")

    odd = band.odd_values()
    bounds = [UNSET] + odd
    buchi = band.lo == band.hi - 1
    kinds, eve, prio, trans = {}, set(), {}, []

    def add(s: RState, owner_eve: bool, priority: int) -> str:
        name = state_name(s)
        kinds[name] = s
        if owner_eve:
            eve.add(name)
        prio[name] = priority
        return name

    entry = {}
    for q in a.states:
        for m in bounds:
            p = 0 if m == UNSET or a.priority[q] != m else 1
            entry[q, m] = add(RState("ENTRY", q, m), False, p)
    sel, choose = {}, {}
    for q in a.states:
        for m in bounds:
            p = 1 if buchi and m != UNSET else 0
            sel[q, m] = add(RState("SEL", q, m), True, p)
            for k, t in enumerate(a.transitions):
                if t.src == q and (q, t.letter) in pairs:
                    choose[q, m, k] = add(RState("CH", q, m, k), False, p)
    lose_eve = add(RState(LOSE_EVE), True, 1)
    lose_adam = add(RState(LOSE_ADAM), False, 0)

    sep_init = {}
    for members in family.entries.values():
        for k, c in members:
            ren = {}
            for s in c.states:
                ren[s] = add(RState("SEP", k=k, sep_state=s), s in c.eve, c.priority[s])
            sep_init[k] = ren[c.initial]
            trans += [(ren[t.src], t.letter, t.dir, ren[t.dst]) for t in c.transitions]

    for (q, m), name in entry.items():
        for letter in a.alphabet:
            if (q, letter) not in pairs:
                trans.append((name, letter, EPS, lose_eve))
            elif m != UNSET and a.priority[q] > m:
                trans.append((name, letter, EPS, lose_adam))
            elif m == UNSET:
                trans += [(name, letter, EPS, sel[q, m2]) for m2 in bounds]
            else:
                trans.append((name, letter, EPS, sel[q, m]))
    for (q, m), name in sel.items():
        for letter in a.alphabet:
            ks = [k for k in a.transitions_from(q, letter) if (q, m, k) in choose]
            trans += [(name, letter, EPS, choose[q, m, k]) for k in ks]
    for (q, m, k), name in choose.items():
        t = a.transitions[k]
        trans += [(name, t.letter, EPS, sep_init[k]),
                  (name, t.letter, LEFT, entry[t.left, m]),
                  (name, t.letter, RIGHT, entry[t.right, m])]
    for letter in a.alphabet:
        trans += [(lose_eve, letter, EPS, lose_eve), (lose_adam, letter, EPS, lose_adam)]

    # dead ends lose for their owner
    covered = {(t[0], t[1]) for t in trans}
    for name in kinds:
        for letter in a.alphabet:
            if (name, letter) not in covered:
                trans.append((name, letter, EPS, lose_eve if name in eve else lose_adam))

    r = Ata(f"R_{a.name}", a.alphabet, list(kinds), eve, entry[a.initial, UNSET], prio,
            list(dict.fromkeys(trans)))
    return r, kinds


def build_r(a: Nta, family: SeparatorFamily, band: Optional[IndexPair] = None) -> Ata:
    return build_r_layout(a, family, band)[0]
