"""Solve a random parity game twice and check the two solvers agree."""
from treeauto.games import EVE, random_game, solve_game, solve_game_oracle

g = random_game(12, 0.2, 5, seed=4)
fast, slow = solve_game(g), solve_game_oracle(g)
print("Eve wins from", sorted(fast.region(EVE)))
print("solvers agree:", fast.winner == slow.winner)
for p in sorted(fast.region(EVE))[:5]:
    if g.owner[p] == EVE:
        print(f"  at {p} Eve moves to {fast.strategy_eve[p]}")
