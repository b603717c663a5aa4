"""Build a separator family from pairwise separators and check its obligations."""
from treeauto import datasets
from treeauto.boolean import partition_family
from treeauto.verify import member_ata, random_corpus, verify_family

p4 = datasets.nta("P4")
fam = partition_family(p4, datasets.pair_separators("P4"))
for pair, members in fam.entries.items():
    print(pair, [(k, c.name, len(c.states)) for k, c in members])

corpus = random_corpus(p4.alphabet, 50, seed=4)
report = verify_family(p4, fam, corpus)
print(f"checked {report.checked} trees, {len(report.violations)} violations")

t = corpus.trees[3]
print(t.name, "left child", t.at("L"), "->",
      [k for k, c in fam.entries["q0", "a"] if member_ata(t, c)])
