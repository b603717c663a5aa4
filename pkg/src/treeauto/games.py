"""Finite parity games: max-parity, Eve wins when the top recurring priority is even.

Two solvers with independent code paths: :func:`solve_game` (recursive
attractor decomposition) and :func:`solve_game_oracle` (small progress
measures).  Both return positional strategies.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .core import AutomatonError

EVE, ADAM = "EVE", "ADAM"
_PLAYERS = (EVE, ADAM)

# fresh positions used to repair dead ends; the owner of a dead end loses
_SINK = {EVE: ("__sink__", EVE), ADAM: ("__sink__", ADAM)}


def opponent(player: str) -> str:
    return ADAM if player == EVE else EVE


@dataclass(frozen=True)
class ParityGame:
    positions: tuple
    owner: Mapping[Hashable, str]
    priority: Mapping[Hashable, int]
    edges: tuple
    initial: Hashable = None
    name: str = "game"

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        object.__setattr__(self, "edges", tuple((u, v) for u, v in self.edges))
        object.__setattr__(self, "owner", dict(self.owner))
        object.__setattr__(self, "priority", dict(self.priority))
        known = set(self.positions)
        if len(known) != len(self.positions):
            raise AutomatonError("duplicate positions")
        if set(self.owner) != known or set(self.priority) != known:
            raise AutomatonError("owner and priority must be total")
        if not set(self.owner.values()) <= set(_PLAYERS):
            raise AutomatonError("owner must be EVE or ADAM")
        if any(not isinstance(p, int) or p < 0 for p in self.priority.values()):
            raise AutomatonError("priorities must be natural numbers")
        has_succ = set()
        for u, v in self.edges:
            if u not in known or v not in known:
                raise AutomatonError(f"edge ({u!r}, {v!r}) leaves the arena")
            has_succ.add(u)
        if has_succ != known:
            raise AutomatonError("every position needs a successor")
        if self.initial is not None and self.initial not in known:
            raise AutomatonError("initial position not in arena")

    def successors(self) -> dict:
        succ = {p: [] for p in self.positions}
        for u, v in self.edges:
            if v not in succ[u]:
                succ[u].append(v)
        return succ

    def dual(self) -> "ParityGame":
        """Owners swapped and priorities shifted by one: winners swap pointwise."""
        return ParityGame(
            self.positions,
            {p: opponent(o) for p, o in self.owner.items()},
            {p: k + 1 for p, k in self.priority.items()},
            self.edges,
            self.initial,
            self.name + "_dual",
        )


def make_game(owner: Mapping, priority: Mapping, edges: Iterable, initial=None,
              name: str = "game") -> ParityGame:
    """Build a game, sending dead ends to a losing sink of their owner."""
    positions = list(owner)
    edges = list(dict.fromkeys(edges))
    has_succ = {u for u, _ in edges}
    owner, priority = dict(owner), dict(priority)
    for p in list(positions):
        if p not in has_succ:
            sink = _SINK[owner[p]]
            if sink not in owner:
                positions.append(sink)
                owner[sink] = owner[p]
                # odd loop loses for Eve, even loop loses for Adam
                priority[sink] = 1 if owner[p] == EVE else 0
                edges.append((sink, sink))
            edges.append((p, sink))
    return ParityGame(tuple(positions), owner, priority, tuple(edges), initial, name)


@dataclass(frozen=True)
class Solution:
    winner: Mapping[Hashable, str]
    strategy_eve: Mapping[Hashable, Hashable] = field(default_factory=dict)
    strategy_adam: Mapping[Hashable, Hashable] = field(default_factory=dict)

    def region(self, player: str) -> set:
        return {p for p, w in self.winner.items() if w == player}

    def strategy(self, player: str) -> Mapping:
        return self.strategy_eve if player == EVE else self.strategy_adam


class _Arena:
    """Integer-indexed view of a game used by both solvers."""

    def __init__(self, g: ParityGame):
        self.game = g
        self.pos = list(g.positions)
        self.idx = {p: k for k, p in enumerate(self.pos)}
        n = len(self.pos)
        self.owner = [0 if g.owner[p] == EVE else 1 for p in self.pos]
        self.prio = [g.priority[p] for p in self.pos]
        self.succ = [[] for _ in range(n)]
        self.pred = [[] for _ in range(n)]
        seen = set()
        for u, v in g.edges:
            i, j = self.idx[u], self.idx[v]
            if (i, j) not in seen:
                seen.add((i, j))
                self.succ[i].append(j)
                self.pred[j].append(i)

    def solution(self, win, strat) -> Solution:
        winner = {self.pos[k]: _PLAYERS[win[k]] for k in range(len(self.pos))}
        eve = {self.pos[k]: self.pos[v] for k, v in strat.items()
               if win[k] == 0 and self.owner[k] == 0}
        adam = {self.pos[k]: self.pos[v] for k, v in strat.items()
                if win[k] == 1 and self.owner[k] == 1}
        return Solution(winner, eve, adam)


def _attractor(ar: _Arena, alive: set, target: set, player: int, strat: dict) -> set:
    """Positions in ``alive`` from which ``player`` forces a visit to ``target``.

    Attracting moves of ``player`` are recorded in ``strat``.
    """
    attr = set(target)
    count = {}
    queue = deque(target)
    while queue:
        v = queue.popleft()
        for u in ar.pred[v]:
            if u not in alive or u in attr:
                continue
            if ar.owner[u] == player:
                attr.add(u)
                strat[u] = v
                queue.append(u)
            else:
                if u not in count:
                    count[u] = sum(1 for w in ar.succ[u] if w in alive)
                count[u] -= 1
                if count[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr


def _zielonka(ar: _Arena, alive: set):
    """Return (win_0, win_1, strategy) restricted to the subgame ``alive``."""
    if not alive:
        return set(), set(), {}
    top = max(ar.prio[v] for v in alive)
    p = top % 2
    target = {v for v in alive if ar.prio[v] == top}
    strat_a = {}
    a = _attractor(ar, alive, target, p, strat_a)
    w = _zielonka(ar, alive - a)
    if not w[1 - p]:
        strat = dict(w[2])
        strat.update(strat_a)
        for v in target:
            if ar.owner[v] == p:
                strat[v] = next(u for u in ar.succ[v] if u in alive)
        wins = [None, None]
        wins[p], wins[1 - p] = set(alive), set()
        return wins[0], wins[1], strat
    strat_b = {}
    b = _attractor(ar, alive, w[1 - p], 1 - p, strat_b)
    rest = _zielonka(ar, alive - b)
    strat = dict(rest[2])
    for v in w[1 - p]:
        if v in w[2]:
            strat[v] = w[2][v]
    strat.update(strat_b)
    wins = [None, None]
    wins[p] = rest[p]
    wins[1 - p] = rest[1 - p] | b
    return wins[0], wins[1], strat


def solve_game(g: ParityGame) -> Solution:
    """Exact winning regions and positional strategies by recursive attractors."""
    ar = _Arena(g)
    w0, w1, strat = _zielonka(ar, set(range(len(ar.pos))))
    win = [0 if k in w0 else 1 for k in range(len(ar.pos))]
    assert not (w0 & w1) and len(w0) + len(w1) == len(ar.pos)
    return ar.solution(win, strat)


def _spm_eve(ar: _Arena):
    """Small progress measures; returns (Eve-won indices, Eve strategy)."""
    n = len(ar.pos)
    top = max(ar.prio, default=0)
    odds = [k for k in range(top, 0, -1) if k % 2 == 1]  # most significant first
    bound = [sum(1 for p in ar.prio if p == k) for k in odds]
    # components compared at priority p: odd values >= p
    width = {p: sum(1 for k in odds if k >= p) for p in range(top + 1)}
    zero = (0,) * len(odds)
    rho = [zero] * n

    def prog(v, w):
        m = rho[w]
        if m is None:
            return None
        p = ar.prio[v]
        r = width[p]
        head = list(m[:r])
        if p % 2 == 1:
            i = r - 1
            while i >= 0:
                if head[i] < bound[i]:
                    head[i] += 1
                    break
                head[i] = 0
                i -= 1
            if i < 0:
                return None
        return tuple(head) + zero[r:]

    def key(m):
        # None is top, above every measure
        return (1,) if m is None else (0,) + m

    def lifted(v):
        vals = [prog(v, w) for w in ar.succ[v]]
        best = (min if ar.owner[v] == 0 else max)(vals, key=key)
        return best if key(best) > key(rho[v]) else rho[v]

    queue = deque(range(n))
    queued = [True] * n
    while queue:
        v = queue.popleft()
        queued[v] = False
        if rho[v] is None:
            continue
        new = lifted(v)
        if new != rho[v]:
            rho[v] = new
            for u in ar.pred[v]:
                if not queued[u] and rho[u] is not None:
                    queued[u] = True
                    queue.append(u)
    won = [rho[v] is not None for v in range(n)]
    strat = {}
    for v in range(n):
        if won[v] and ar.owner[v] == 0:
            strat[v] = min(ar.succ[v], key=lambda w: key(prog(v, w)))
    return won, strat


def solve_game_oracle(g: ParityGame) -> Solution:
    """Winning regions by small progress measures; Adam's strategy via the dual game."""
    ar = _Arena(g)
    won, strat_eve = _spm_eve(ar)
    dual = _Arena(g.dual())
    won_dual, strat_adam = _spm_eve(dual)
    win = [0 if w else 1 for w in won]
    for k in range(len(win)):
        if won_dual[k] == (win[k] == 1):
            continue
        raise AssertionError("progress measures disagree with the dual game")
    strat = dict(strat_eve)
    strat.update(strat_adam)
    return ar.solution(win, strat)


def restrict(g: ParityGame, strategy: Mapping) -> ParityGame:
    """The game where positions in ``strategy`` keep only their chosen edge."""
    edges = [(u, v) for u, v in g.edges if u not in strategy or strategy[u] == v]
    return ParityGame(g.positions, g.owner, g.priority, edges, g.initial, g.name)


class Lcg:
    """32-bit linear congruential generator (a=1664525, c=1013904223, m=2**32).

    ``below(n)`` takes the high 16 bits of the next state modulo ``n``.  Used
    for every corpus so outputs do not depend on the platform's RNG.
    """

    A, C, M = 1664525, 1013904223, 2 ** 32

    def __init__(self, seed: int):
        self.state = seed % self.M

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) % self.M
        return self.state

    def below(self, n: int) -> int:
        return (self.next() >> 16) % n


def random_game(n: int, density: float, max_priority: int, seed: int) -> ParityGame:
    """Random arena; each ordered pair is an edge with probability ``density``."""
    rng = Lcg(seed)
    owner, priority, edges = {}, {}, []
    for v in range(n):
        owner[v] = _PLAYERS[rng.below(2)]
        priority[v] = rng.below(max_priority + 1)
    threshold = int(density * 1000)
    for u in range(n):
        out = [v for v in range(n) if rng.below(1000) < threshold]
        if not out:
            out = [rng.below(n)]
        edges.extend((u, v) for v in out)
    return ParityGame(tuple(range(n)), owner, priority, tuple(edges), 0, f"rand_{n}_{seed}")
