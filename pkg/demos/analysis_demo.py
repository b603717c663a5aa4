"""Emptiness, productivity and ambiguity of the shipped tree automata."""
from treeauto import datasets
from treeauto.analysis import emptiness_witness, is_disjoint, is_unambiguous, productive_pairs
from treeauto.textio import format_tree
from treeauto.verify import count_runs

inf, eb, allb = datasets.nta("INF"), datasets.nta("EB"), datasets.nta("ALLB")
print("a tree accepted by INF:")
print(format_tree(emptiness_witness(inf)))
print("productive pairs of INF:", sorted(productive_pairs(inf).productive_pairs))

disjoint, _ = is_disjoint(eb, allb)
print("EB and ALLB disjoint:", disjoint)

for a in (inf, eb):
    verdict = is_unambiguous(a)
    print(f"{a.name} unambiguous: {verdict.unambiguous}")
    if verdict.witness is not None:
        print("  witness has", count_runs(verdict.witness, a).name, "accepting runs")
