"""Deciding whether a graph admits a labelling with power-of-two edge sums.

A labelling assigns pairwise distinct integers to the vertices so that the
two labels of every edge add up to ``2**k`` for some ``k >= 0``. Writing the
edge sums as unknowns ``X`` turns this into ``M @ L = X`` for the incidence
matrix ``M``: the left kernel of ``M`` gives linear equations on ``X``, and
vertex pairs that no right-kernel shift can separate give inequations. The
resulting system is solved in powers of two and every family is turned back
into a concrete, verified labelling.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exactalg import incidence_matrix, left_kernel_basis, lll_reduce, right_kernel_basis, solve_exact, solve_parametric
from .graphs import Graph, contains_subgraph, write_graph6
from .linpoly import LinPoly, integerize
from .powersolve import PowerSystem, SolutionMap, iter_instantiations, iter_solutions


class InvariantViolation(RuntimeError):
    """Raised when an internal consistency check fails."""


def is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def f_value(a: Iterable[int]) -> int:
    """Number of 2-element subsets of ``a`` whose sum is a power of two."""
    vals = list(a)
    if len(set(vals)) != len(vals):
        raise ValueError("elements must be pairwise distinct")
    return sum(1 for x, y in combinations(vals, 2) if is_power_of_two(x + y))


def verify_labeling(g: Graph, labels: Sequence) -> bool:
    if len(labels) != g.n:
        return False
    for x in labels:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return False
        elif not isinstance(x, (int, np.integer)):
            return False
    vals = [int(x) for x in labels]
    if len(set(vals)) != len(vals):
        return False
    return all(is_power_of_two(vals[u] + vals[v]) for u, v in g.edges)


def distinctify(L: Sequence, kr: np.ndarray) -> list[int]:
    """Add an integer combination of the columns of ``kr`` to ``L`` making its entries distinct.

    Entries whose rows of ``kr`` coincide must already differ. The columns are
    collapsed into one with weights ``(d+1)**c`` (``d`` = spread of ``kr``),
    which separates distinct rows, and that column is added ``t + 1`` times
    (``t`` = spread of ``L``).
    """
    v = []
    for x in L:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        v.append(int(x))
    k, s = kr.shape
    if k != len(v):
        raise ValueError("size mismatch between L and kernel rows")
    rows = [tuple(int(x) for x in kr[i]) for i in range(k)]
    seen: dict[tuple, set] = {}
    for r, x in zip(rows, v):
        bucket = seen.setdefault(r, set())
        if x in bucket:
            raise InvariantViolation("equal kernel rows with equal entries")
        bucket.add(x)
    if s == 0 or k == 0:
        return v
    entries = [x for r in rows for x in r]
    d = max(entries) - min(entries)
    weights = [(d + 1) ** c for c in range(s)]
    a = [sum(x * w for x, w in zip(r, weights)) for r in rows]
    t = max(v) - min(v)
    return [x + y * (t + 1) for x, y in zip(v, a)]


@dataclass
class LinearData:
    """Everything derived from the incidence matrix of one graph."""

    M: np.ndarray
    p: list[LinPoly]
    kl: np.ndarray
    kr: np.ndarray
    system: PowerSystem | None  # None when some pair can never be separated
    clash: tuple[int, int] | None = None


def build_system(g: Graph, lll: bool = True) -> LinearData:
    M = incidence_matrix(g)
    kl = left_kernel_basis(M)
    if lll and kl.shape[0] >= 2:
        kl = lll_reduce(kl)
    E = [LinPoly((e + 1, int(c)) for e, c in enumerate(row)) for row in kl]
    p = solve_parametric(M)
    kr = right_kernel_basis(M)
    rows = [tuple(kr[i]) for i in range(g.n)]
    N = []
    for i, j in combinations(range(g.n), 2):
        if rows[i] != rows[j]:
            continue
        q = integerize(p[i] - p[j])
        if q.is_zero():
            return LinearData(M, p, kl, kr, None, (i, j))
        if q.term_count() >= 2:
            N.append(q)
    return LinearData(M, p, kl, kr, PowerSystem.build(E, N, g.m))


@dataclass
class Verdict:
    graph: Graph
    admissible: bool
    witness: list[int] | None = None
    families: list[SolutionMap] = field(default_factory=list)
    stats: Counter = field(default_factory=Counter)
    status: str = "inadmissible"
    system: PowerSystem | None = None
    millis: float = 0.0

    def record(self) -> dict:
        rec = {
            "graph6": write_graph6(self.graph),
            "admissible": self.admissible,
            "status": self.status,
        }
        if self.witness is not None:
            rec["labels"] = self.witness
        rec["families_count"] = len(self.families)
        rec["branches"] = self.stats.get("branches", 0)
        rec["millis"] = round(self.millis, 3)
        return rec


def realize(g: Graph, data: LinearData, family: SolutionMap, budget: int = 64,
            stats: Counter | None = None) -> list[int] | None:
    """Turn a solution family into a verified labelling, or None if the budget runs out."""
    stats = stats if stats is not None else Counter()
    for exps in iter_instantiations(family, budget):
        stats["instantiations"] += 1
        X = [1 << e for e in exps]
        L = solve_exact(data.M, X)
        if L is None:
            raise InvariantViolation(f"inconsistent M L = X for {write_graph6(g)} with X={X}")
        if any(x.denominator != 1 for x in L):
            stats["nonintegral"] += 1
            continue
        labels = distinctify(L, data.kr)
        if not verify_labeling(g, labels):
            raise InvariantViolation(f"labelling {labels} fails for {write_graph6(g)}")
        return labels
    return None


def graph_solve(g: Graph, *, lll: bool = True, budget: int = 64, all_families: bool = True) -> Verdict:
    """Decide admissibility of ``g`` and build a witness labelling.

    With ``all_families=False`` the search stops at the first family that
    yields a witness, which is all a yes/no decision needs.
    """
    t0 = time.perf_counter()
    stats = Counter()
    data = build_system(g, lll=lll)
    if data.system is None:
        stats["clash"] += 1
        return Verdict(g, False, stats=stats, millis=(time.perf_counter() - t0) * 1e3)
    families = []
    witness = None
    for fam in iter_solutions(data.system, stats):
        families.append(fam)
        stats["systems"] += 1
        if witness is None:
            witness = realize(g, data, fam, budget, stats)
            if witness is None:
                stats["budget_exhausted"] += 1
        if witness is not None and not all_families:
            break
    if witness is not None:
        status = "admissible"
    elif families:
        status = "parametric"
    else:
        status = "inadmissible"
    return Verdict(g, bool(families), witness, families, stats, status, data.system,
                   (time.perf_counter() - t0) * 1e3)


def is_admissible(g: Graph, mfs=None, *, lll: bool = True) -> bool:
    """Admissibility with a fast rejection for graphs containing a known forbidden subgraph."""
    if mfs is not None:
        patterns = mfs.graphs if hasattr(mfs, "graphs") else mfs
        for h in patterns:
            if contains_subgraph(g, h):
                return False
    return graph_solve(g, lll=lll, all_families=False).admissible


def to_dot(g: Graph, labels: Sequence[int] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        text = str(labels[v]) if labels is not None else str(v)
        lines.append(f'  {v} [label="{text}"];')
    for u, v in g.edges:
        if labels is not None:
            lines.append(f'  {u} -- {v} [label="{labels[u] + labels[v]}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
