"""Canonical labelling by individualisation and refinement.

A small pure-Python relative of nauty: equitable refinement of an ordered
partition, a depth-first search tree that individualises vertices of the
first smallest non-singleton cell, and pruning with automorphisms discovered
from leaves carrying equal certificates. The canonical labelling is the leaf
with the largest certificate; graphs are isomorphic iff their certificates
coincide.
"""

from __future__ import annotations

from functools import lru_cache

from .core import Graph
from .graph6 import write_graph6


class _Partition:
    __slots__ = ("lab", "end", "cell_of")

    def __init__(self, lab, end, cell_of):
        self.lab = lab          # vertices in partition order
        self.end = end          # cell start -> cell end (exclusive)
        self.cell_of = cell_of  # vertex -> start of its cell

    def copy(self):
        return _Partition(self.lab[:], dict(self.end), self.cell_of[:])

    def is_discrete(self):
        return len(self.end) == len(self.lab)


def _refine(adj, part, queue):
    """Refine ``part`` in place to the coarsest equitable partition below it."""
    lab, end, cell_of = part.lab, part.end, part.cell_of
    pending = set(queue)
    queue = list(queue)
    while queue:
        w = queue.pop(0)
        pending.discard(w)
        wmask = 0
        for v in lab[w:end[w]]:
            wmask |= 1 << v
        for c in sorted(end):
            e = end[c]
            if e - c == 1:
                continue
            cell = lab[c:e]
            counts = [(adj[v] & wmask).bit_count() for v in cell]
            if min(counts) == max(counts):
                continue
            order = sorted(range(len(cell)), key=counts.__getitem__)
            cell = [cell[i] for i in order]
            counts = [counts[i] for i in order]
            lab[c:e] = cell
            start = c
            for k in range(1, len(cell) + 1):
                if k == len(cell) or counts[k] != counts[k - 1]:
                    stop = c + k
                    end[start] = stop
                    for v in lab[start:stop]:
                        cell_of[v] = start
                    if start not in pending:
                        pending.add(start)
                        queue.append(start)
                    start = stop


def _individualize(adj, part, v):
    child = part.copy()
    c = child.cell_of[v]
    e = child.end[c]
    lab = child.lab
    i = lab.index(v, c, e)
    lab[c], lab[i] = lab[i], lab[c]
    child.end[c] = c + 1
    child.end[c + 1] = e
    for u in lab[c + 1:e]:
        child.cell_of[u] = c + 1
    _refine(adj, child, [c])
    return child


def _certificate(adj, lab):
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        a = adj[v]
        row = 0
        while a:
            low = a & -a
            row |= 1 << pos[low.bit_length() - 1]
            a ^= low
        rows.append(row)
    return tuple(rows)


def _orbits(n, gens):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, adj):
        self.adj = adj
        self.n = len(adj)
        self.first = None   # (path, lab, cert)
        self.best = None
        self.gens = []

    def _leaf(self, path, lab):
        cert = _certificate(self.adj, lab)
        if self.first is None:
            self.first = self.best = (path, lab, cert)
            return None
        for ref in (self.first, self.best):
            if cert == ref[2]:
                gamma = [0] * self.n
                for a, b in zip(ref[1], lab):
                    gamma[a] = b
                self.gens.append(gamma)
                k = 0
                while k < len(path) and k < len(ref[0]) and path[k] == ref[0][k]:
                    k += 1
                return k
        if cert > self.best[2]:
            self.best = (path, lab, cert)
        return None

    def run(self, part, path):
        if part.is_discrete():
            return self._leaf(path, part.lab)
        c = min((e - s, s) for s, e in part.end.items() if e - s > 1)[1]
        cell = part.lab[c:part.end[c]]
        tried = []
        depth = len(path)
        for v in cell:
            if tried:
                fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                if fixing:
                    orb = _orbits(self.n, fixing)
                    if any(orb[v] == orb[t] for t in tried):
                        continue
            tried.append(v)
            jump = self.run(_individualize(self.adj, part, v), path + [v])
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_labeling(g: Graph) -> tuple[list[int], tuple[int, ...]]:
    """Return ``(perm, certificate)``; ``g.relabel(perm)`` is the canonical form."""
    n = g.n
    if n == 0:
        return [], ()
    adj = g.adj
    degs = [a.bit_count() for a in adj]
    lab = sorted(range(n), key=lambda v: degs[v])
    end = {}
    cell_of = [0] * n
    start = 0
    for k in range(1, n + 1):
        if k == n or degs[lab[k]] != degs[lab[k - 1]]:
            end[start] = k
            for v in lab[start:k]:
                cell_of[v] = start
            start = k
    part = _Partition(lab, end, cell_of)
    _refine(adj, part, list(end))
    search = _Search(adj)
    search.run(part, [])
    _, best_lab, cert = search.best
    perm = [0] * n
    for i, v in enumerate(best_lab):
        perm[v] = i
    return perm, cert


@lru_cache(maxsize=200_000)
def canonical_form(g: Graph) -> Graph:
    perm, _ = canonical_labeling(g)
    return g.relabel(perm)


def canonical_graph6(g: Graph) -> str:
    return write_graph6(canonical_form(g))


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m or sorted(a.degrees) != sorted(b.degrees):
        return False
    return canonical_labeling(a)[1] == canonical_labeling(b)[1]
