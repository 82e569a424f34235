"""Solving linear equations and inequations in powers of two.

Unknowns are ``x_i = 2**y_i`` with ``y_i >= 0``. In any vanishing sum of
nonzero integers two summands share their 2-adic valuation, so every solution
of an equation ``sum c_i x_i = 0`` satisfies ``x_j = 2**d * x_i`` for some pair
of its support, with ``d = nu2(c_i) - nu2(c_j)``. The solver branches on those
pairs, eliminates one unknown per level, and forbids each explored equality in
the later sibling branches so that families do not repeat.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .linpoly import ExpExpr, LinPoly, format_linpoly, nu2, parse_linpoly, substitute


def _normalize(polys: Iterable[LinPoly], drop_single: bool) -> list[LinPoly]:
    out, seen = [], set()
    for p in polys:
        if p.is_zero():
            continue
        if drop_single and p.term_count() == 1:
            continue
        q = p.normal_form()
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


@dataclass(frozen=True)
class PowerSystem:
    """Equations ``E`` (``p == 0``) and inequations ``N`` (``p != 0``) over ``x_1..x_m``."""

    E: tuple[LinPoly, ...]
    N: tuple[LinPoly, ...] = ()
    m: int = 0

    @classmethod
    def build(cls, E: Iterable[LinPoly], N: Iterable[LinPoly] = (), m: int | None = None) -> "PowerSystem":
        E = tuple(_normalize(E, drop_single=False))
        N = tuple(_normalize(N, drop_single=True))
        top = max((v for p in E + N for v in p.support), default=0)
        return cls(E, N, top if m is None else max(m, top))

    def dump(self) -> str:
        lines = ["EQ:"] + [format_linpoly(p) for p in self.E]
        lines += ["NEQ:"] + [format_linpoly(p) for p in self.N]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "PowerSystem":
        E, N, cur = [], [], None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line == "EQ:":
                cur = E
            elif line == "NEQ:":
                cur = N
            elif cur is None:
                raise ValueError("polynomial before EQ:/NEQ: section")
            else:
                cur.append(parse_linpoly(line))
        return cls.build(E, N, m)


@dataclass
class SolutionMap:
    """``x_i = 2**(y_root + offset)`` for every variable; ``residual`` must stay nonzero."""

    assignment: dict[int, ExpExpr]
    residual: tuple[LinPoly, ...] = ()

    @property
    def free(self) -> list[int]:
        return sorted(v for v, e in self.assignment.items() if e.root == v and e.offset == 0)

    def exponents(self, free_values: dict[int, int]) -> list[int]:
        m = max(self.assignment, default=0)
        return [free_values[self.assignment[v].root] + self.assignment[v].offset for v in range(1, m + 1)]

    def residual_ok(self, free_values: dict[int, int]) -> bool:
        vals = {v: 1 << y for v, y in free_values.items()}
        return all(p.evaluate(vals) != 0 for p in self.residual)

    def render(self) -> str:
        parts = []
        for v in sorted(self.assignment):
            e = self.assignment[v]
            parts.append(f"x{v} = 2^({e})")
        text = ", ".join(parts)
        if self.residual:
            text += " | " + ", ".join(f"{format_linpoly(p)} != 0" for p in self.residual)
        return text


def pick_equation(E: Sequence[LinPoly]) -> LinPoly:
    """Equation of smallest support; ties by support indices, then coefficient sizes."""
    return min(E, key=lambda p: (p.term_count(), p.support, tuple(abs(c) for _, c in p.terms)))


def iter_solutions(system: PowerSystem, stats: Counter | None = None) -> Iterator[SolutionMap]:
    """Lazily yield solution families of ``system`` in deterministic order."""
    if stats is None:
        stats = Counter()
    variables = tuple(range(1, system.m + 1))
    for s in _solve(list(system.E), list(system.N), variables, stats):
        yield s


def _substitute_all(polys, j, i, d, inequations):
    """Substitute ``x_j = 2**d x_i`` into normalised polys.

    Polys without ``x_j`` come back unchanged and are already in normal form,
    so only the rewritten ones are renormalised. For inequations a vanishing
    poly makes the branch infeasible (None) and single terms are dropped; for
    equations a vanishing poly is simply satisfied.
    """
    out, seen = [], set()
    for p in polys:
        q = substitute(p, j, i, d)
        if q is not p:
            if not q.terms:
                if inequations:
                    return None
                continue
            if inequations and len(q.terms) == 1:
                continue
            q = q.normal_form()
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


def _solve(E, N, variables, stats) -> Iterator[SolutionMap]:
    stats["branches"] += 1
    if not E:
        stats["leaves"] += 1
        yield SolutionMap({v: ExpExpr(v, 0) for v in variables}, tuple(N))
        return
    eq = pick_equation(E)
    support = eq.support
    if len(support) == 1:
        return
    local_N = list(N)
    for a, b in combinations(support, 2):
        ca, cb = eq[a], eq[b]
        # keep i, eliminate j; equal valuations keep the smaller index
        if nu2(ca) >= nu2(cb):
            i, j, d = a, b, nu2(ca) - nu2(cb)
        else:
            i, j, d = b, a, nu2(cb) - nu2(ca)
        N2 = _substitute_all(local_N, j, i, d, inequations=True)
        if N2 is None:
            stats["pruned"] += 1
            continue
        forbid = LinPoly({j: 1, i: -(1 << d)}).normal_form()
        if forbid not in local_N:
            local_N.append(forbid)
        E2 = _substitute_all(E, j, i, d, inequations=False)
        rest = tuple(v for v in variables if v != j)
        for s in _solve(E2, N2, rest, stats):
            s.assignment[j] = s.assignment[i].shifted(d)
            yield s


def solve_in_powers(system: PowerSystem, stats: Counter | None = None) -> list[SolutionMap]:
    return list(iter_solutions(system, stats))


def _gap(residual: Sequence[LinPoly]) -> int:
    width = max((abs(int(c)).bit_length() for p in residual for _, c in p.terms), default=0)
    return width + 1


def iter_instantiations(s: SolutionMap, budget: int = 64) -> Iterator[list[int]]:
    """Exponent vectors realising ``s`` with every residual inequation nonzero.

    The first attempt uses consecutive free values; later ones space the free
    variables by more than the widest residual coefficient, which makes the
    valuations of the surviving terms distinct, and shift everything up by one
    per attempt.
    """
    free = s.free
    gap = _gap(s.residual)
    schedule = [(1, 0)] + [(gap, base) for base in range(budget)]
    for step, base in schedule[:budget]:
        values = {v: base + k * step for k, v in enumerate(free)}
        if s.residual_ok(values):
            yield s.exponents(values)


def instantiate_free(s: SolutionMap, residual_N: Sequence[LinPoly] | None = None,
                     budget: int = 64) -> list[int] | None:
    """First exponent vector for ``s`` keeping ``residual_N`` (default: ``s.residual``) nonzero."""
    if residual_N is not None:
        s = SolutionMap(s.assignment, tuple(residual_N))
    return next(iter_instantiations(s, budget), None)
