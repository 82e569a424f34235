"""Exact integer and rational linear algebra for incidence matrices.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, which keeps
arithmetic exact and lets ``n x 0`` and ``0 x n`` shapes exist.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphs import Graph
from .linpoly import LinPoly


def int_matrix(rows: Sequence[Sequence[int]], ncols: int | None = None) -> np.ndarray:
    rows = [[int(x) for x in r] for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    a = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        a[i, :] = r
    return a


def _lists(a: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in a]


def incidence_matrix(g: Graph) -> np.ndarray:
    """Edge-by-vertex 0/1 matrix; row order follows ``g.edges``."""
    m = np.zeros((g.m, g.n), dtype=object)
    for e, (u, v) in enumerate(g.edges):
        m[e, u] = 1
        m[e, v] = 1
    return m


def hnf_with_transform(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Row Hermite normal form.

    Returns ``(H, U, rank)`` with ``U @ a == H``, ``U`` unimodular, the first
    ``rank`` rows of ``H`` in echelon form with positive pivots and reduced
    entries above each pivot, and the remaining rows zero.
    """
    r, c = a.shape
    h = _lists(a)
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    piv = 0
    for col in range(c):
        if piv == r:
            break
        while True:
            nz = [i for i in range(piv, r) if h[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(h[i][col]), i))
            h[piv], h[best] = h[best], h[piv]
            u[piv], u[best] = u[best], u[piv]
            p = h[piv][col]
            done = True
            for i in range(piv + 1, r):
                q = h[i][col] // p
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[piv])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[piv])]
                if h[i][col]:
                    done = False
            if done:
                break
        if piv < r and h[piv][col] != 0:
            if h[piv][col] < 0:
                h[piv] = [-x for x in h[piv]]
                u[piv] = [-x for x in u[piv]]
            p = h[piv][col]
            for i in range(piv):
                q = h[i][col] // p
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[piv])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[piv])]
            piv += 1
    return int_matrix(h, c), int_matrix(u, r), piv


def hnf(a: np.ndarray) -> np.ndarray:
    """Nonzero rows of the row Hermite normal form (a canonical lattice basis)."""
    h, _, rank = hnf_with_transform(a)
    return h[:rank]


def rank(a: np.ndarray) -> int:
    return hnf_with_transform(a)[2]


def _sign_normalize(rows):
    out = []
    for row in rows:
        lead = next((x for x in row if x != 0), 0)
        out.append([-x for x in row] if lead < 0 else list(row))
    return out


def left_kernel_basis(m: np.ndarray) -> np.ndarray:
    """Integer rows ``w`` spanning the lattice ``{w : w @ m == 0}``."""
    rows = m.shape[0]
    _, u, rk = hnf_with_transform(m)
    return int_matrix(_sign_normalize(_lists(u)[rk:]), rows)


def right_kernel_basis(m: np.ndarray) -> np.ndarray:
    """Integer ``n x t`` matrix whose columns span ``{v : m @ v == 0}``."""
    k = left_kernel_basis(m.T)
    if k.shape[0] == 0:
        return np.zeros((m.shape[1], 0), dtype=object)
    return k.T.copy()


def lll_reduce(b: np.ndarray, delta: Fraction = Fraction(3, 4)) -> np.ndarray:
    """LLL-reduce the rows of ``b`` (assumed independent), all-integer version.

    Follows the integral formulation in which Gram determinants ``d`` and the
    scaled Gram-Schmidt coefficients ``lam`` stay integral throughout.
    """
    basis = _lists(b)
    n = len(basis)
    if n <= 1:
        return int_matrix(basis, b.shape[1])
    num, den = delta.numerator, delta.denominator

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    # 1-based to mirror the textbook indices; d[0] = 1
    bb = [None] + basis
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            bb[k] = [x - q * y for x, y in zip(bb[k], bb[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k, kmax):
        bb[k], bb[k - 1] = bb[k - 1], bb[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        big = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (big * t + lm * lam[i][k]) // d[k]
        d[k - 1] = big

    d[1] = dot(bb[1], bb[1])
    if d[1] == 0:
        raise ValueError("dependent rows")
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = dot(bb[k], bb[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            if d[k] == 0:
                raise ValueError("dependent rows")
        while True:
            redi(k, k - 1)
            lm = lam[k][k - 1]
            # d_k d_{k-2} < delta d_{k-1}^2 - lam^2
            if den * d[k] * d[k - 2] < num * d[k - 1] ** 2 - den * lm * lm:
                swapi(k, kmax)
                k = max(2, k - 1)
            else:
                break
        for l in range(k - 2, 0, -1):
            redi(k, l)
        k += 1
    return int_matrix(bb[1:], b.shape[1])


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form on the first ``ncols`` columns; pivots leftmost-first."""
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        p = rows[r][col]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_parametric(m: np.ndarray) -> list[LinPoly]:
    """Particular solution ``l_i = p_i(x_1..x_m)`` of ``m @ L = X``; free unknowns set to 0."""
    nrows, ncols = m.shape
    aug = [[Fraction(int(x)) for x in m[i]] + [Fraction(int(i == j)) for j in range(nrows)]
           for i in range(nrows)]
    red, pivots = _rref(aug, ncols)
    p = [LinPoly() for _ in range(ncols)]
    for r, col in enumerate(pivots):
        p[col] = LinPoly((e + 1, red[r][ncols + e]) for e in range(nrows))
    for poly in p:
        for _, c in poly.terms:
            assert isinstance(c, int) or c.denominator in (1, 2), "unexpected denominator"
    return p


def solve_exact(m: np.ndarray, x: Sequence[int]) -> list[Fraction] | None:
    """A rational solution of ``m @ L = x`` (free unknowns 0), or None if inconsistent."""
    nrows, ncols = m.shape
    aug = [[Fraction(int(v)) for v in m[i]] + [Fraction(int(x[i]))] for i in range(nrows)]
    red, pivots = _rref(aug, ncols)
    for row in red[len(pivots):]:
        if row[ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = red[r][ncols]
    return sol
