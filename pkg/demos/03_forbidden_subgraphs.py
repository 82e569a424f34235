"""Minimal forbidden subgraphs: inadmissible graphs whose proper subgraphs are all admissible.

    python demos/03_forbidden_subgraphs.py [u]      # default u = 8; u = 10 takes a few minutes
"""

import sys
import time

from pow2lab.admissibility import graph_solve
from pow2lab.graphs import write_graph6
from pow2lab.search import find_mfs

u = int(sys.argv[1]) if len(sys.argv) > 1 else 8
t0 = time.perf_counter()


def progress(n, done, total):
    if done == total:
        print(f"  order {n}: {total} connected C4-free candidates scanned ({time.perf_counter() - t0:.1f}s)")


found = find_mfs(u, progress=progress)
print("counts by order:", found.counts())
for g in found:
    degs = sorted(g.degrees, reverse=True)
    print(f"  {write_graph6(g):>12}  n={g.n} m={g.m} degrees={degs}")

# removing any edge of a minimal forbidden subgraph leaves an admissible graph
g = found.by_order(7)[0] if found.by_order(7) else found.graphs[0]
h = g.delete_edge(0)
v = graph_solve(h)
print(f"\n{write_graph6(g)} minus one edge is {v.status}; labels {v.witness}")
