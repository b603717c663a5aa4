"""Random regular trees, membership, and what a broken family does to R."""
from treeauto import datasets
from treeauto.boolean import partition_family, reject_all
from treeauto.construct import build_r
from treeauto.verify import member_nta, random_corpus, verify_equivalence

inf = datasets.nta("INF")
corpus = random_corpus(inf.alphabet, 200, seed=11)
print(sum(member_nta(t, inf) for t in corpus), "of", len(corpus), "trees are in L(INF)")

fam = partition_family(inf, datasets.pair_separators("INF"))
broken = fam.replace_member(0, reject_all(inf.alphabet))
rep = verify_equivalence(inf, build_r(inf, broken), corpus, broken)
print(rep.summary())
for m in rep.mismatches[:3]:
    print(f"  {m.tree}: inA={m.in_a} inR={m.in_r} {m.tag}")
