"""Isomorph-free generation of candidate graphs.

Graphs of order ``k`` are grown from graphs of order ``k - 1`` by appending one
vertex joined to a subset of the old vertices; children are reduced to one
representative per isomorphism class through their canonical form. Connected
graphs always have a non-cut vertex, so in connected mode the parents can be
restricted to connected graphs. Pruning uses two monotone facts about vertex
deletion: degrees drop by at most one, and (when connected) at least one edge
disappears.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .canon import canonical_labeling
from .core import Graph
from .graph6 import write_graph6


@dataclass(frozen=True)
class GenConstraints:
    connected: bool = False
    c4_free: bool = False
    min_degree: int = 0
    edge_count_range: tuple[int, int | None] = (0, None)

    def __post_init__(self):
        lo, hi = self.edge_count_range
        if lo < 0 or (hi is not None and hi < lo):
            raise ValueError(f"bad edge range {self.edge_count_range}")
        if self.min_degree < 0:
            raise ValueError("min_degree must be nonnegative")

    def check(self, n: int) -> None:
        if n > 0 and self.min_degree >= n:
            raise ValueError(f"min_degree {self.min_degree} impossible on {n} vertices")


CONNECTED_C4_FREE = GenConstraints(connected=True, c4_free=True)


def _subsets(parent: Graph, forced: int, lo: int, hi: int, c4_free: bool):
    """Neighbour sets (bitmasks) for a new vertex."""
    k = parent.n
    adj = parent.adj
    out = []

    def rec(v, chosen, size, nbr_union):
        if size > hi:
            return
        if v == k:
            if size >= lo:
                out.append(chosen)
            return
        bit = 1 << v
        if not (forced & bit):
            rec(v + 1, chosen, size, nbr_union)
        if not c4_free or not (adj[v] & nbr_union):
            rec(v + 1, chosen | bit, size + 1, nbr_union | adj[v])

    rec(0, 0, 0, 0)
    return out


@lru_cache(maxsize=None)
def _level(k: int, connected: bool, c4_free: bool, dmin: int, hi: int) -> tuple[tuple[str, Graph], ...]:
    """All graphs of order ``k`` with min degree >= dmin and <= hi edges, canonical and sorted."""
    if hi < 0:
        return ()
    if k == 1:
        return (("@", Graph(1)),) if dmin == 0 else ()
    prev = _level(k - 1, connected, c4_free, max(0, dmin - 1), hi - 1 if connected else hi)
    found: dict[str, Graph] = {}
    for _, parent in prev:
        degs = parent.degrees
        if any(d < dmin - 1 for d in degs):
            continue
        forced = 0
        for v, d in enumerate(degs):
            if d == dmin - 1:
                forced |= 1 << v
        lo = max(dmin, 1 if connected else 0, forced.bit_count())
        room = hi - parent.m
        for mask in _subsets(parent, forced, lo, room, c4_free):
            child = parent.add_vertex(v for v in range(k - 1) if mask >> v & 1)
            perm, _ = canonical_labeling(child)
            canon = child.relabel(perm)
            key = write_graph6(canon)
            if key not in found:
                found[key] = canon
    return tuple(sorted(found.items(), key=lambda kv: (kv[1].m, kv[0])))


def generate(n: int, c: GenConstraints = GenConstraints()) -> Iterator[Graph]:
    """Yield one canonical representative per isomorphism class satisfying ``c``.

    Graphs come in nondecreasing edge count, ties broken by canonical graph6.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    c.check(n)
    lo, hi = c.edge_count_range
    top = n * (n - 1) // 2
    hi = top if hi is None else min(hi, top)
    for key, g in _level(n, c.connected, c.c4_free, c.min_degree, hi):
        if g.m < lo:
            continue
        yield g


def count(n: int, c: GenConstraints = GenConstraints()) -> int:
    return sum(1 for _ in generate(n, c))


def clear_cache() -> None:
    _level.cache_clear()


def extend_with_vertex(g: Graph, k: int, c4_free: bool = False) -> Iterator[Graph]:
    """Join a new vertex to every ``k``-subset of ``g``'s vertices, one graph per isomorphism class."""
    if not 1 <= k <= g.n:
        raise ValueError(f"degree {k} out of range 1..{g.n}")
    seen = set()
    for mask in _subsets(g, 0, k, k, c4_free):
        child = g.add_vertex(v for v in range(g.n) if mask >> v & 1)
        perm, _ = canonical_labeling(child)
        canon = child.relabel(perm)
        key = write_graph6(canon)
        if key not in seen:
            seen.add(key)
            yield canon
