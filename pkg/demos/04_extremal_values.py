"""g(n): the most power-of-two sums among n distinct integers.

    python demos/04_extremal_values.py [n]          # default n = 9; n = 11 takes about a minute
"""

import sys

from pow2lab.admissibility import f_value
from pow2lab.graphs import parse_graph6
from pow2lab.search import GTable, compute_g, g_upper_bound, min_degree_bound

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 9
table = GTable()
compute_g(n_max, table)

print(" n  g(n)  bound  status   witness graph  labels")
for n in range(1, n_max + 1):
    rec = table[n]
    g6, labels = rec.witnesses[0] if rec.witnesses else ("-", [])
    bound = g_upper_bound(n, table[n - 1].value) if n > 2 else "-"
    print(f"{n:2d}  {rec.value:4d}  {bound!s:>5}  {rec.status:7s}  {g6:>13}  {labels}")
    if labels:
        assert f_value(labels) >= rec.value and parse_graph6(g6).m == rec.value

print("\nproblems:", table.check() or "none")
print("\nthe counting bound beyond desk scale:")
for n, prev in [(14, 21), (15, 24)]:
    print(f"  g({n}) <= floor({n}*{prev}/{n - 2}) = {g_upper_bound(n, prev)}")
print(f"  a graph with 27 edges and g(n-1) = 24 has minimum degree >= {min_degree_bound(27, 24)}")
