import io
import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import atlas, brute_canonical, brute_contains, from_nx, has_c4, to_nx
from pow2lab.graphs import (
    CONNECTED_C4_FREE,
    GenConstraints,
    Graph,
    Graph6Error,
    are_isomorphic,
    canonical_form,
    canonical_graph6,
    complete_graph,
    components,
    contains_subgraph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    extend_with_vertex,
    generate,
    is_bipartite,
    is_c4_free,
    is_connected,
    parse_graph6,
    path_graph,
    petersen_graph,
    read_graph6_stream,
    star_graph,
    write_graph6,
    write_graph6_stream,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, tuple(chosen))


def random_graph(rng, n, p=0.4):
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


# ---------------------------------------------------------------- graph6

@pytest.mark.parametrize("text,g", [
    ("C~", complete_graph(4)),
    ("@", Graph(1)),
    ("A_", Graph(2, ((0, 1),))),
    ("A?", Graph(2)),
    ("?", Graph(0)),
    ("Bw", complete_graph(3)),
])
def test_graph6_known_strings(text, g):
    assert parse_graph6(text) == g
    assert write_graph6(g) == text


def test_graph6_matches_networkx():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randrange(0, 70), rng.random())
        ours = write_graph6(g)
        theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert ours == theirs


def test_graph6_long_order_roundtrip():
    g = path_graph(70)
    text = write_graph6(g)
    assert text.startswith("~")
    assert parse_graph6(text) == g


@given(graphs(max_n=12))
def test_graph6_roundtrip(g):
    assert parse_graph6(write_graph6(g)) == g


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "A`", "~??", "A a"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        parse_graph6(bad)


def test_graph6_stream_skips_header_and_blanks():
    src = io.StringIO(">>graph6<<Bw\n\nC~\n")
    got = [(k, write_graph6(g)) for k, g in read_graph6_stream(src)]
    assert got == [(1, "Bw"), (3, "C~")]
    out = io.StringIO()
    assert write_graph6_stream([complete_graph(3), cycle_graph(4)], out) == 2
    assert out.getvalue().split() == ["Bw", "Cl"]


def test_graph6_stream_reports_line():
    with pytest.raises(Graph6Error, match="line 2"):
        list(read_graph6_stream(["Bw", "B"]))


# ---------------------------------------------------------------- basics

def test_graph_normalises_edges():
    assert Graph(3, ((2, 0), (1, 0))).edges == ((0, 1), (0, 2))
    for bad in [(3, ((0, 0),)), (3, ((0, 3),)), (3, ((0, 1), (1, 0)))]:
        with pytest.raises(ValueError):
            Graph(*bad)


def test_builders():
    assert petersen_graph().m == 15 and set(petersen_graph().degrees) == {3}
    assert star_graph(3).degrees == [3, 1, 1, 1]
    assert empty_graph(4).m == 0
    assert disjoint_union(complete_graph(3), path_graph(2)).edges == ((0, 1), (0, 2), (1, 2), (3, 4))


@given(graphs())
def test_predicates_match_networkx(g):
    h = to_nx(g)
    assert is_c4_free(g) == (not has_c4(h))
    if g.n:
        assert is_connected(g) == nx.is_connected(h)
    assert sorted(map(sorted, components(g))) == sorted(sorted(c) for c in nx.connected_components(h))
    ok, colour = is_bipartite(g)
    assert ok == nx.is_bipartite(h)
    if ok:
        assert all(colour[u] != colour[v] for u, v in g.edges)


def test_known_predicates():
    assert not is_c4_free(cycle_graph(4))
    assert is_c4_free(cycle_graph(5)) and is_c4_free(petersen_graph())
    assert not is_connected(empty_graph(2))
    assert is_bipartite(cycle_graph(6))[0] and not is_bipartite(cycle_graph(5))[0]


# ---------------------------------------------------------------- canonical forms

def test_canonical_matches_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng, rng.randrange(1, 7), rng.random())
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert canonical_graph6(g) == canonical_graph6(h)
        assert brute_canonical(canonical_form(g)) == brute_canonical(g)


@given(graphs(max_n=10), st.randoms(use_true_random=False))
@settings(max_examples=150)
def test_canonical_invariant_under_relabelling(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert canonical_graph6(g.relabel(perm)) == canonical_graph6(g)


def test_canonical_separates_non_isomorphic():
    for n in range(1, 7):
        cls = atlas(n)
        keys = {canonical_graph6(from_nx(h)) for h in cls}
        assert len(keys) == len(cls)


def test_are_isomorphic_symmetric_graphs():
    p = petersen_graph()
    perm = list(range(10))
    random.Random(2).shuffle(perm)
    assert are_isomorphic(p, p.relabel(perm))
    assert not are_isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3)))


# ---------------------------------------------------------------- subgraph containment

def test_contains_subgraph_against_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng, rng.randrange(1, 7), 0.5)
        h = random_graph(rng, rng.randrange(1, 5), 0.5)
        assert contains_subgraph(g, h) == brute_contains(g, h), (g, h)


def test_contains_known_cases():
    assert contains_subgraph(complete_graph(4), cycle_graph(4))
    assert not contains_subgraph(petersen_graph(), cycle_graph(4))
    assert contains_subgraph(petersen_graph(), cycle_graph(5))
    assert not contains_subgraph(path_graph(3), complete_graph(3))


# ---------------------------------------------------------------- generation

def _atlas_count(n, connected=False, c4=False, dmin=0, lo=0, hi=None):
    total = 0
    for h in atlas(n):
        if connected and not nx.is_connected(h):
            continue
        if c4 and has_c4(h):
            continue
        if h.number_of_nodes() and min(d for _, d in h.degree()) < dmin:
            continue
        e = h.number_of_edges()
        if e < lo or (hi is not None and e > hi):
            continue
        total += 1
    return total


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("connected,c4,dmin,rng_", [
    (False, False, 0, (0, None)),
    (True, False, 0, (0, None)),
    (True, True, 0, (0, None)),
    (False, True, 1, (0, None)),
    (True, True, 2, (0, None)),
    (False, False, 0, (3, 5)),
])
def test_generate_counts_match_atlas(n, connected, c4, dmin, rng_):
    if dmin >= n:
        pytest.skip("degree bound impossible")
    c = GenConstraints(connected=connected, c4_free=c4, min_degree=dmin, edge_count_range=rng_)
    out = list(generate(n, c))
    assert len(out) == _atlas_count(n, connected, c4, dmin, *rng_)
    assert len({canonical_graph6(g) for g in out}) == len(out)
    for g in out:
        assert (not connected or is_connected(g)) and (not c4 or is_c4_free(g))
        assert g.min_degree() >= dmin


def test_generate_four_vertex_connected_c4_free():
    got = {canonical_graph6(g) for g in generate(4, CONNECTED_C4_FREE)}
    want = {canonical_graph6(g) for g in (path_graph(4), star_graph(3), Graph(4, ((0, 1), (0, 2), (1, 2), (2, 3))))}
    assert got == want


def test_generate_order_is_deterministic():
    out = list(generate(7, CONNECTED_C4_FREE))
    keys = [(g.m, write_graph6(g)) for g in out]
    assert keys == sorted(keys)
    assert [write_graph6(g) for g in generate(7, CONNECTED_C4_FREE)] == [k for _, k in keys]


@pytest.mark.parametrize("n,expected", [(8, 186), (9, 740)])
def test_generate_connected_c4_free_counts(n, expected):
    assert sum(1 for _ in generate(n, CONNECTED_C4_FREE)) == expected


def test_generate_rejects_bad_constraints():
    with pytest.raises(ValueError):
        list(generate(3, GenConstraints(min_degree=3)))
    with pytest.raises(ValueError):
        GenConstraints(edge_count_range=(4, 2))


# ---------------------------------------------------------------- extension

def test_extend_with_vertex_examples():
    assert len(list(extend_with_vertex(complete_graph(3), 1))) == 1
    kids = list(extend_with_vertex(path_graph(3), 2))
    assert len(kids) == 2
    assert {k.m for k in kids} == {4}


def test_extend_with_vertex_classes():
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(2, 6), 0.5)
        for k in range(1, g.n + 1):
            kids = list(extend_with_vertex(g, k))
            brute = {canonical_graph6(g.add_vertex(s)) for s in combinations(range(g.n), k)}
            assert {canonical_graph6(c) for c in kids} == brute
            assert len(kids) == len(brute)
            if is_c4_free(g):
                c4 = {canonical_graph6(c) for c in extend_with_vertex(g, k, c4_free=True)}
                assert c4 == {key for key in brute if is_c4_free(parse_graph6(key))}


def test_extend_with_vertex_degree_range():
    with pytest.raises(ValueError):
        list(extend_with_vertex(path_graph(3), 4))
