"""Non-induced subgraph containment by backtracking."""

from __future__ import annotations

from .core import Graph


def _match_order(h: Graph) -> list[int]:
    """Order pattern vertices so each one (after the first in its component) touches a placed vertex."""
    order = []
    placed = 0
    degs = h.degrees
    remaining = set(range(h.n))
    while remaining:
        frontier = [v for v in remaining if h.adj[v] & placed]
        pool = frontier or list(remaining)
        v = max(pool, key=lambda u: ((h.adj[u] & placed).bit_count(), degs[u], -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """True iff some injective map sends every edge of ``h`` onto an edge of ``g``."""
    if h.n > g.n or h.m > g.m:
        return False
    if h.n == 0:
        return True
    gdeg = g.degrees
    hdeg = h.degrees
    if any(a > b for a, b in zip(sorted(hdeg, reverse=True), sorted(gdeg, reverse=True))):
        return False
    order = _match_order(h)
    # candidate masks by degree
    by_deg = {}
    for d in set(hdeg):
        mask = 0
        for v in range(g.n):
            if gdeg[v] >= d:
                mask |= 1 << v
        by_deg[d] = mask
    back = []  # for each position: earlier positions adjacent to it in h
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        back.append([pos[u] for u in h.neighbors(v) if pos[u] < pos[v]])
    gadj = g.adj
    image = [0] * h.n
    k = h.n

    def extend(i, used):
        if i == k:
            return True
        cand = by_deg[hdeg[order[i]]] & ~used
        for j in back[i]:
            cand &= gadj[image[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            image[i] = w
            if extend(i + 1, used | low):
                return True
        return False

    return extend(0, 0)


def contains_any(g: Graph, patterns) -> bool:
    return any(contains_subgraph(g, h) for h in patterns)
