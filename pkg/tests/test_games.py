import pytest
from hypothesis import given, settings, strategies as st

from treeauto.core import AutomatonError
from treeauto.games import (ADAM, EVE, Lcg, ParityGame, make_game, random_game, restrict,
                            solve_game, solve_game_oracle)

SOLVERS = [solve_game, solve_game_oracle]


def single(owner, prio):
    return ParityGame(("v",), {"v": owner}, {"v": prio}, (("v", "v"),), "v")


@pytest.mark.parametrize("solve", SOLVERS)
def test_one_position_games(solve):
    assert solve(single(EVE, 0)).winner == {"v": EVE}
    assert solve(single(ADAM, 1)).winner == {"v": ADAM}
    assert solve(single(ADAM, 0)).winner == {"v": EVE}


def test_sinks_are_rejected_or_repaired():
    with pytest.raises(AutomatonError):
        ParityGame(("u", "v"), {"u": EVE, "v": ADAM}, {"u": 0, "v": 0}, (("u", "v"),))
    g = make_game({"u": EVE, "v": ADAM, "w": EVE}, {"u": 0, "v": 0, "w": 2},
                  [("u", "v"), ("u", "w")])
    sol = solve_game(g)
    # Adam is stuck at v and loses there; Eve is stuck at w and loses there
    assert sol.winner["v"] == EVE and sol.winner["w"] == ADAM
    assert sol.winner["u"] == EVE and sol.strategy_eve["u"] == "v"


def test_lcg_is_documented_sequence():
    rng = Lcg(0)
    assert [rng.next() for _ in range(3)] == [1013904223, 1196435762, 3519870697]
    assert random_game(10, 0.3, 4, 9) == random_game(10, 0.3, 4, 9)


def check_solution(g, sol):
    succ = g.successors()
    assert set(sol.winner) == set(g.positions)
    for player in (EVE, ADAM):
        region = sol.region(player)
        strat = sol.strategy(player)
        assert set(strat) == {p for p in region if g.owner[p] == player}
        for p, q in strat.items():
            assert q in succ[p] and q in region
        # the opponent cannot leave the region either
        for p in region:
            if g.owner[p] != player:
                assert all(q in region for q in succ[p])
        if region:
            fixed = solve_game(restrict(g, strat))
            assert all(fixed.winner[p] == player for p in region)


def games_for(count, max_n=50, seed0=0):
    for s in range(seed0, seed0 + count):
        rng = Lcg(s)
        yield random_game(1 + rng.below(max_n), (1 + rng.below(4)) / 20, 6, s)


def test_solvers_agree_on_random_games():
    for g in games_for(200):
        a, b = solve_game(g), solve_game_oracle(g)
        assert a.winner == b.winner
        check_solution(g, a)
        check_solution(g, b)


def test_dual_game_swaps_winners():
    for g in games_for(100, max_n=20, seed0=500):
        for solve in SOLVERS:
            w, wd = solve(g).winner, solve(g.dual()).winner
            assert all(wd[p] != w[p] for p in g.positions)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2 ** 31), st.integers(0, 7))
def test_determinacy_and_agreement(n, seed, maxp):
    g = random_game(n, 0.25, maxp, seed)
    a, b = solve_game(g), solve_game_oracle(g)
    assert a.winner == b.winner
    check_solution(g, a)
