"""Walk through one admissible and one inadmissible graph.

    python demos/01_labelling_basics.py
"""

from pow2lab.admissibility import build_system, graph_solve, to_dot, verify_labeling
from pow2lab.graphs import complete_graph, cycle_graph, write_graph6


def show(name, g):
    print(f"== {name}  ({write_graph6(g)}, {g.n} vertices, {g.m} edges)")
    data = build_system(g)
    print("left kernel of the incidence matrix (one equation per row):")
    for row in data.kl.tolist():
        print("  ", row)
    if data.system is not None:
        print("power system:")
        print("   " + data.system.dump().replace("\n", "\n   ").rstrip())
    v = graph_solve(g)
    print(f"verdict: {v.status}")
    for fam in v.families:
        print("  family:", fam.render())
    if v.witness is not None:
        print("  labels:", v.witness, "verified:", verify_labeling(g, v.witness))
        sums = [v.witness[a] + v.witness[b] for a, b in g.edges]
        print("  edge sums:", sums)
    print()
    return v


k3 = show("triangle", complete_graph(3))
show("four-cycle", cycle_graph(4))

# C4 fails because x1 + x4 = x2 + x3 with powers of two makes two edges that
# share a vertex carry the same sum, so their far ends would need equal labels.
print("hand-made labelling of the triangle:", [-1, 3, 5], verify_labeling(complete_graph(3), [-1, 3, 5]))
print()
print(to_dot(complete_graph(3), k3.witness, name="K3"))
