"""
Runtime on larger graphs
========================

The marking is polynomial; the oracles are not and are not run here.
"""

import time

from wormdl import random_graph, run_algorithm

for channels in (250, 500, 1000, 2000):
    g = random_graph(channels, 4, 0.01, seed=1)
    t0 = time.perf_counter()
    report = run_algorithm(g)
    elapsed = time.perf_counter() - t0
    print(f"C={channels:5d} labels={g.num_labels():6d} rounds={report.rounds} "
          f"verdict={report.verdict} {elapsed * 1e3:8.1f} ms")
