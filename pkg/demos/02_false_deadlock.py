"""
When the marking over-approximates
==================================

The marking decides whether *some* escape-free set of paths exists. The
exact condition asks for one whose paths are pairwise disjoint, and
checking that takes an exponential search. This graph separates the two.
"""

from wormdl import check_witness, run_algorithm
from wormdl.fixtures import hub3
from wormdl.oracle import analyze

g = hub3()
report = run_algorithm(g)
print("marks:", report.store.marks, "verdict:", report.verdict)

###############################################################################
# Every path in the witness needs channel 0: a header parked in 0, and two
# worms whose heads also sit in 0. No flit-level configuration realises it.
for p, d in report.witness.pairs():
    print("path", p, "dest", d)
print("witness passes the checker:", check_witness(g, report.witness))

###############################################################################
# The disjoint oracle finds nothing, so this verdict is a false deadlock.
result = analyze(g)
print("escape-free set exists:", result.escape_free_exists)
print("disjoint deadlock:", result.disjoint_deadlock)
