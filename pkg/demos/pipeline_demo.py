"""From an unambiguous Büchi automaton to a weak alternating one, then verify."""
from treeauto import datasets
from treeauto.boolean import partition_family
from treeauto.construct import build_r
from treeauto.core import IndexPair, scc_comp_check
from treeauto.verify import random_corpus, verify_equivalence

for name in ("INF", "NEXT", "P4"):
    a = datasets.nta(name)
    fam = partition_family(a, datasets.pair_separators(name))
    r = build_r(a, fam)
    idx = a.index()
    band = IndexPair(idx.lo + 1, idx.hi)
    ok = scc_comp_check(r, band).verdict
    rep = verify_equivalence(a, r, random_corpus(a.alphabet, 200, seed=1), fam)
    print(f"{name}: index {idx.lo}..{idx.hi}, R has {len(r.states)} states, "
          f"Comp({band.lo},{band.hi})={ok}, {rep.summary()}")
