"""Automata on infinite binary trees: parity games, unambiguous NTAs and the
collapse of their languages to alternating automata of lower index."""
from .core import (Ata, AtaTransition, IndexPair, Nta, RegularTree, SccReport,
                   Transition, normalize_shift, scc_comp_check)
from .games import ParityGame, Solution, solve_game, solve_game_oracle
from .analysis import (delta_rooted, is_disjoint, is_unambiguous, live_states,
                       make_monitor, productive_pairs, prune)
from .boolean import SeparatorFamily, complement, intersect, partition_family, union
from .construct import build_r
from .verify import (Corpus, count_runs, member_ata, member_nta, random_regular_tree,
                     verify_equivalence, verify_family)

__all__ = [
    "Ata", "AtaTransition", "IndexPair", "Nta", "RegularTree", "SccReport",
    "Transition", "normalize_shift", "scc_comp_check", "ParityGame", "Solution",
    "solve_game", "solve_game_oracle", "delta_rooted", "is_disjoint", "is_unambiguous",
    "live_states", "make_monitor", "productive_pairs", "prune", "SeparatorFamily",
    "complement", "intersect", "partition_family", "union", "build_r", "Corpus",
    "count_runs", "member_ata", "member_nta", "random_regular_tree", "verify_equivalence",
    "verify_family",
]
