import json

import pytest

from pow2lab.admissibility import InvariantViolation, verify_labeling
from pow2lab.graphs import (
    CONNECTED_C4_FREE,
    GenConstraints,
    canonical_graph6,
    complete_graph,
    contains_subgraph,
    cycle_graph,
    extend_with_vertex,
    generate,
    parse_graph6,
    path_graph,
)
from pow2lab.search import (
    C4,
    CheckpointError,
    GRecord,
    GTable,
    MfsSet,
    audit_minimal,
    compute_g,
    extend_search,
    find_mfs,
    g_upper_bound,
    maximal_admissible,
    min_degree_bound,
    read_checkpoint,
)


@pytest.fixture(scope="module")
def mfs8():
    return find_mfs(8)


def test_bounds_arithmetic():
    assert g_upper_bound(14, 21) == 24
    assert g_upper_bound(15, 24) == 27
    assert min_degree_bound(27, 24) == 3
    assert min_degree_bound(5, 9) == 0
    with pytest.raises(ValueError):
        g_upper_bound(2, 1)


def test_mfs_up_to_eight(mfs8):
    assert mfs8.counts() == {4: 1, 7: 2}
    for g in mfs8.by_order(7):
        audit_minimal(g, full=True)
        assert not contains_subgraph(g, C4)
    assert len(find_mfs(7, include_c4=False)) == 2


def test_mfs_members_are_pairwise_incomparable(mfs8):
    for a in mfs8:
        for b in mfs8:
            if a is not b:
                assert not contains_subgraph(a, b)


def test_audit_rejects_non_minimal():
    with pytest.raises(InvariantViolation):
        audit_minimal(complete_graph(3))
    with pytest.raises(InvariantViolation):
        audit_minimal(complete_graph(4))  # K4 - e still contains C4


def test_mfs_set_persistence(tmp_path, mfs8):
    path = tmp_path / "mfs.g6"
    mfs8.save(path)
    back = MfsSet.load(path)
    assert [canonical_graph6(g) for g in back] == [canonical_graph6(g) for g in mfs8]
    assert back.strata == mfs8.strata
    side = json.loads((tmp_path / "mfs.g6.json").read_text())
    assert side["counts_by_order"] == {"4": 1, "7": 2}
    (tmp_path / "mfs.g6.json").write_text(json.dumps({"graphs": []}))
    with pytest.raises(ValueError):
        MfsSet.load(path)


def test_mfs_set_membership(mfs8):
    assert cycle_graph(4).relabel([2, 0, 3, 1]) in mfs8
    assert mfs8.contained_in(complete_graph(5)) is not None
    assert mfs8.contained_in(cycle_graph(5)) is None
    assert C4 not in mfs8.without(C4)
    s = MfsSet()
    assert s.add(C4) and not s.add(C4.relabel([1, 2, 3, 0]))


def test_parallel_matches_sequential(mfs8):
    par = find_mfs(8, workers=2)
    assert [canonical_graph6(g) for g in par] == [canonical_graph6(g) for g in mfs8]


def test_checkpoint_resume(tmp_path, mfs8):
    ck = tmp_path / "run.ckpt"
    calls = []

    def stop_midway(n, done, total):
        calls.append((n, done))
        if n == 7 and done >= 20:
            raise KeyboardInterrupt

    with pytest.raises(KeyboardInterrupt):
        find_mfs(8, checkpoint=ck, every=10, progress=stop_midway)
    rec = read_checkpoint(ck)
    assert rec["order"] == 7 and rec["done"] == 20
    resumed = find_mfs(8, checkpoint=ck, every=10)
    assert [canonical_graph6(g) for g in resumed] == [canonical_graph6(g) for g in mfs8]
    # finished run: a further resume does no work and agrees
    assert len(find_mfs(8, checkpoint=ck)) == len(mfs8)


def test_checkpoint_corruption_is_detected(tmp_path):
    ck = tmp_path / "run.ckpt"
    find_mfs(6, checkpoint=ck, every=5)
    lines = ck.read_text().splitlines()
    rec = json.loads(lines[-1])
    rec["done"] += 1
    ck.write_text("\n".join(lines[:-1] + [json.dumps(rec)]) + "\n")
    with pytest.raises(CheckpointError, match="checksum"):
        read_checkpoint(ck)
    ck.write_text(lines[0][:-5] + "\n")
    with pytest.raises(CheckpointError, match="unreadable"):
        find_mfs(6, checkpoint=ck)


def test_compute_g_small_orders():
    table = GTable()
    rec = compute_g(8, table)
    assert table.values() == {1: 0, 2: 1, 3: 3, 4: 4, 5: 6, 6: 7, 7: 9, 8: 11}
    assert rec.status == "proven" and rec.upper == 12
    assert table.check() == []
    for n in range(3, 9):
        assert table[n].witnesses
        for g6, labels in table[n].witnesses:
            g = parse_graph6(g6)
            assert g.n == n and g.m == table[n].value and verify_labeling(g, labels)


def test_gtable_roundtrip_and_check(tmp_path):
    table = GTable()
    compute_g(6, table)
    path = tmp_path / "g.json"
    table.save(path)
    back = GTable.load(path)
    assert back.values() == table.values()
    assert back[6].witnesses == table[6].witnesses
    back.put(GRecord(7, 6))
    back.put(GRecord(8, 20))
    problems = back.check()
    assert any("g(7) < g(6)" in p for p in problems)
    assert any("g(8) exceeds" in p for p in problems)
    back.put(GRecord(5, 6, witnesses=[("Bw", [1, 2, 3])]))
    assert any("bad witness" in p for p in back.check())


def test_compute_g_beyond_desk_scale():
    table = GTable([GRecord(11, 17, proof="supplied"), GRecord(13, 21, proof="supplied")])
    rec = compute_g(12, table)
    assert rec.status == "lower-bound-only" and rec.value == 19 and rec.upper == 20
    rec = compute_g(14, table)
    assert rec.status == "proven" and rec.proof == "bound+witness" and rec.value == 24


def test_maximal_admissible():
    found = maximal_admissible(7, 9, g_prev=7)
    assert found
    for g, labels in found:
        assert g.n == 7 and g.m == 9 and verify_labeling(g, labels)
    assert maximal_admissible(7, 10, g_prev=7) == []
    assert maximal_admissible(5, 6, min_degree=5) == []


@pytest.mark.parametrize("base", [complete_graph(3), path_graph(4)])
def test_extend_search_matches_direct_solve(base):
    from pow2lab.admissibility import graph_solve
    for k in range(1, base.n + 1):
        got = {canonical_graph6(g): labels for g, labels in extend_search([base], k)}
        want = {canonical_graph6(c) for c in extend_with_vertex(base, k, c4_free=True)
                if graph_solve(c, all_families=False).admissible}
        assert set(got) == want
        for key, labels in got.items():
            assert verify_labeling(parse_graph6(key), labels)


def test_extend_search_edge_filter():
    out = extend_search([path_graph(4)], 2, target_e=5)
    assert all(g.m == 5 for g, _ in out)


def test_every_connected_c4_free_graph_of_order_seven_is_classified(mfs8):
    # graphs avoiding both order-7 forbidden subgraphs are exactly the admissible ones
    from pow2lab.admissibility import graph_solve
    bad = mfs8.by_order(7)
    for g in generate(7, CONNECTED_C4_FREE):
        contains = any(contains_subgraph(g, h) for h in bad)
        assert graph_solve(g, all_families=False).admissible == (not contains)


def test_generate_respects_edge_window():
    out = list(generate(8, GenConstraints(connected=True, c4_free=True, min_degree=2, edge_count_range=(10, 11))))
    assert out and all(10 <= g.m <= 11 and g.min_degree() >= 2 for g in out)
