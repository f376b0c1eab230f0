"""
Cross-checking against the oracles on random graphs
===================================================
"""

import collections

from wormdl import Verdict, check_witness, random_graph, run_algorithm
from wormdl.oracle import analyze

tally = collections.Counter()
for seed in range(300):
    g = random_graph(1 + seed % 8, 1 + seed % 3, (0.2, 0.4, 0.7)[seed % 3], seed)
    report = run_algorithm(g)
    oracle = analyze(g)
    deadlock = report.verdict is Verdict.DEADLOCK
    tally["deadlock" if deadlock else "deadlock-free"] += 1
    tally["agree"] += deadlock == oracle.escape_free_exists
    tally["witness ok"] += deadlock and check_witness(g, report.witness)
    tally["false deadlock"] += deadlock and oracle.disjoint_deadlock is None

for key, value in sorted(tally.items()):
    print(f"{key:>15}: {value}")
