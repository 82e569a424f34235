import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
import sympy

from pow2lab.exactalg import (
    hnf,
    hnf_with_transform,
    incidence_matrix,
    int_matrix,
    left_kernel_basis,
    lll_reduce,
    rank,
    right_kernel_basis,
    solve_exact,
    solve_parametric,
)
from pow2lab.graphs import Graph, complete_graph, cycle_graph, path_graph, petersen_graph


def rand_matrix(rng, r, c, lo=-6, hi=6):
    return int_matrix([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], c)


def gram_schmidt(rows):
    bstar, mu = [], []
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        mrow = []
        for j in range(i):
            bj = bstar[j]
            c = sum(Fraction(x) * y for x, y in zip(b, bj)) / sum(y * y for y in bj)
            mrow.append(c)
            v = [x - c * y for x, y in zip(v, bj)]
        bstar.append(v)
        mu.append(mrow)
    return bstar, mu


def test_incidence_matrix_rows_follow_edges():
    m = incidence_matrix(path_graph(3))
    assert m.tolist() == [[1, 1, 0], [0, 1, 1]]


def test_hnf_properties_and_sympy_rank():
    rng = random.Random(1)
    for _ in range(120):
        a = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        h, u, rk = hnf_with_transform(a)
        assert (u.dot(a) == h).all()
        assert abs(sympy.Matrix(u.tolist()).det()) == 1
        assert rk == sympy.Matrix(a.tolist()).rank()
        assert not h[rk:].any()
        last = -1
        for i in range(rk):
            col = next(j for j, x in enumerate(h[i]) if x != 0)
            assert col > last and h[i, col] > 0
            assert all(0 <= h[k, col] < h[i, col] for k in range(i))
            last = col


def test_hnf_is_a_lattice_invariant():
    rng = random.Random(2)
    for _ in range(60):
        a = rand_matrix(rng, 3, 4)
        # multiply by a random unimodular matrix
        t = np.identity(3, dtype=object)
        for _ in range(5):
            i, j = rng.sample(range(3), 2)
            t[i] += rng.randint(-3, 3) * t[j]
        assert (hnf(t.dot(a)) == hnf(a)).all()


def test_kernels():
    rng = random.Random(3)
    for _ in range(120):
        a = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), -2, 2)
        kl = left_kernel_basis(a)
        kr = right_kernel_basis(a)
        rk = rank(a)
        assert kl.shape == (a.shape[0] - rk, a.shape[0])
        assert kr.shape == (a.shape[1], a.shape[1] - rk)
        if kl.shape[0]:
            assert not kl.dot(a).any()
        if kr.shape[1]:
            assert not a.dot(kr).any()


def test_left_kernel_is_saturated():
    # every integer vector in the rational kernel is an integer combination of the basis
    a = int_matrix([[2, 4], [1, 2], [3, 6]])
    kl = left_kernel_basis(a)
    lattice = hnf(kl)
    w = int_matrix([[1, -2, 0]])
    assert not w.dot(a).any()
    assert (hnf(np.vstack([kl, w])) == lattice).all()


@pytest.mark.parametrize("g,dl,dr", [
    (path_graph(3), 0, 1),
    (cycle_graph(4), 1, 1),
    (complete_graph(3), 0, 0),
    (petersen_graph(), 5, 0),
])
def test_graph_kernel_dimensions(g, dl, dr):
    m = incidence_matrix(g)
    assert left_kernel_basis(m).shape[0] == dl
    assert right_kernel_basis(m).shape[1] == dr


def test_c4_left_kernel_alternates():
    kl = left_kernel_basis(incidence_matrix(cycle_graph(4)))
    # edges of C4 sorted: (0,1), (0,3), (1,2), (2,3)
    assert kl.tolist() == [[1, -1, -1, 1]]


def test_lll_examples():
    r = lll_reduce(int_matrix([[1, 1], [1, 0]]))
    assert sorted(sorted(abs(x) for x in row) for row in r.tolist()) == [[0, 1], [0, 1]]
    assert abs(sympy.Matrix(r.tolist()).det()) == 1


def test_lll_reduced_and_same_lattice():
    rng = random.Random(4)
    for _ in range(80):
        k = rng.randint(2, 4)
        while True:
            b = rand_matrix(rng, k, rng.randint(k, 6), -20, 20)
            if rank(b) == k:
                break
        r = lll_reduce(b)
        assert (hnf(r) == hnf(b)).all()
        bstar, mu = gram_schmidt(r.tolist())
        for i in range(1, k):
            assert all(abs(c) <= Fraction(1, 2) for c in mu[i])
            lhs = sum(x * x for x in bstar[i])
            rhs = (Fraction(3, 4) - mu[i][i - 1] ** 2) * sum(x * x for x in bstar[i - 1])
            assert lhs >= rhs


def random_graph(rng, n, p):
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


def test_solve_parametric_on_incidence_matrices():
    rng = random.Random(5)
    for _ in range(150):
        g = random_graph(rng, rng.randint(2, 8), 0.5)
        if not g.m:
            continue
        m = incidence_matrix(g)
        p = solve_parametric(m)
        kl = left_kernel_basis(m)
        # for any X in the column space, p(X) solves M L = X
        L0 = [rng.randint(-9, 9) for _ in range(g.n)]
        X = [L0[u] + L0[v] for u, v in g.edges]
        L = [q.evaluate(X) for q in p]
        assert [L[u] + L[v] for u, v in g.edges] == X
        assert not kl.dot(int_matrix([X]).T).any() if kl.shape[0] else True
        assert all(Fraction(c).denominator <= 2 for q in p for _, c in q.terms)


def test_p3_particular_solution():
    p = solve_parametric(incidence_matrix(path_graph(3)))
    # L = (x1, 0, x2) up to the free unknown chosen; check by evaluation
    X = [5, 9]
    L = [q.evaluate(X) for q in p]
    assert L[0] + L[1] == 5 and L[1] + L[2] == 9


def test_solve_exact():
    m = incidence_matrix(complete_graph(3))
    assert solve_exact(m, [2, 4, 8]) == [-1, 3, 5]
    assert solve_exact(incidence_matrix(cycle_graph(4)), [1, 2, 4, 8]) is None
    half = solve_exact(m, [1, 2, 4])
    assert half == [Fraction(-1, 2), Fraction(3, 2), Fraction(5, 2)]


def test_p3_kernel_shapes_and_solution_line():
    m = incidence_matrix(path_graph(3))
    assert left_kernel_basis(m).shape == (0, 2)
    assert right_kernel_basis(m).T.tolist() in ([[1, -1, 1]], [[-1, 1, -1]])
    L = solve_exact(m, [1, 2])
    # L lies on (0, 1, 1) + a * (1, -1, 1)
    a = L[0]
    assert [L[0], L[1], L[2]] == [a, 1 - a, 1 + a]
