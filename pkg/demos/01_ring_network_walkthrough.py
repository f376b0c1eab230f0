"""
Marking a three-node ring
=========================

A ring n0 -> n1 -> n2 -> n0 with two destinations. Channels c0, c1, c2 run
between the nodes, s0, s1, s2 deliver to the destinations d0 and d1.
"""

from wormdl import format_witness, run_algorithm, to_dot
from wormdl.fixtures import ex1
from wormdl.oracle import all_disjoint_deadlocks, max_escape_free_set

g = ex1()
names = ["c0", "c1", "c2", "s0", "s1", "s2", "d0", "d1"]

###############################################################################
# Run the marking. 2 = immune, 3 = a header can block, 4 = only tails block.
report = run_algorithm(g)
for c in g.channels:
    print(f"{names[c]}: mark {report.store.marks[c]}  "
          f"escs={[names[d] for d in report.store.escs[c]]} "
          f"deps={[names[d] for d in report.store.deps[c]]}")
print("verdict:", report.verdict, "after", report.rounds, "rounds")

###############################################################################
# The witness: a singleton path per 3-marked channel, then a path from each
# 4-marked channel into a blocked header.
print(format_witness(report.witness))

###############################################################################
# The brute-force oracles agree. The largest escape-free family contains
# one more path than the witness needs, and two disjoint deadlocks exist:
# the two-worm configuration and a single d1 worm c2 -> c0 -> c1 whose head
# waits for its own tail.
print("maximal escape-free set:", max_escape_free_set(g).pairs())
for w in all_disjoint_deadlocks(g):
    print("disjoint deadlock:", [([names[c] for c in p], names[d]) for p, d in w.pairs()])

###############################################################################
# Render with marks for Graphviz (``dot -Tpng``).
print(to_dot(g, report.store.marks))
