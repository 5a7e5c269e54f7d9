import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import to_nx
from spectral_turan.canon import canonical_form
from spectral_turan.enumerate import (
    KNOWN_COUNTS_BY_EDGES,
    CapExceeded,
    caps,
    enumerate_graphs_by_edges,
    enumerate_graphs_by_vertices,
    estimated_count,
    mutate_edge_rotation,
    random_graph,
    random_tree,
    read_graph6_lines,
)
from spectral_turan.graph import GraphError, graph_from_edges, is_connected, min_degree, to_graph6

EDGE_COUNTS = [1, 2, 5, 11, 26, 68, 177, 497, 1476, 4613]
VERTEX_COUNTS = [1, 2, 4, 11, 34, 156, 1044, 12346]


def forms(stream):
    return [canonical_form(g).bytes for g in stream]


@pytest.mark.parametrize("m", range(1, 7))
def test_edge_counts_match_oracle(m):
    got = list(enumerate_graphs_by_edges(m))
    want = oracles.classes_by_edges(m)
    assert len(got) == len(want)
    # same classes, not just the same number
    got_keys = sorted(nx.weisfeiler_lehman_graph_hash(to_nx(g)) for g in got)
    want_keys = sorted(nx.weisfeiler_lehman_graph_hash(h) for h in want)
    assert got_keys == want_keys


@pytest.mark.parametrize("n", range(1, 7))
def test_vertex_counts_match_oracle(n):
    assert sum(1 for _ in enumerate_graphs_by_vertices(n)) == oracles.classes_by_vertices(n)


def test_edge_examples():
    assert [to_graph6(g) for g in enumerate_graphs_by_edges(1)] == ["A_"]
    assert sum(1 for _ in enumerate_graphs_by_edges(2)) == 2
    three = {canonical_form(g) for g in enumerate_graphs_by_edges(3)}
    named = [
        graph_from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        graph_from_edges(4, [(0, 1), (1, 2), (2, 3)]),
        graph_from_edges(4, [(0, 1), (0, 2), (0, 3)]),
        graph_from_edges(5, [(0, 1), (1, 2), (3, 4)]),
        graph_from_edges(6, [(0, 1), (2, 3), (4, 5)]),
    ]
    assert three == {canonical_form(g) for g in named}


@pytest.mark.parametrize("m", range(1, 9))
def test_edge_counts_known(m):
    assert sum(1 for _ in enumerate_graphs_by_edges(m)) == EDGE_COUNTS[m - 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_vertex_counts_known(n):
    assert sum(1 for _ in enumerate_graphs_by_vertices(n)) == VERTEX_COUNTS[n - 1]


@pytest.mark.parametrize("m", range(1, 8))
def test_no_duplicates_and_no_isolated(m):
    graphs = list(enumerate_graphs_by_edges(m))
    assert all(g.m == m and min_degree(g) >= 1 for g in graphs)
    f = forms(graphs)
    assert len(set(f)) == len(f)


@pytest.mark.parametrize("n", range(1, 7))
def test_vertex_stream_distinct(n):
    graphs = list(enumerate_graphs_by_vertices(n))
    assert all(g.n == n for g in graphs)
    f = forms(graphs)
    assert len(set(f)) == len(f)


def test_isolated_vertices_allowed_by_edges():
    # m=2 on 4 vertices: P3+K1 and 2K2
    got = list(enumerate_graphs_by_edges(2, no_isolated=False, n=4))
    assert len(got) == 2 and all(g.n == 4 for g in got)
    with pytest.raises(ValueError):
        enumerate_graphs_by_edges(2, no_isolated=False)


def test_order_is_stable():
    a = [to_graph6(g) for g in enumerate_graphs_by_edges(7)]
    b = [to_graph6(g) for g in enumerate_graphs_by_edges(7)]
    assert a == b


@pytest.mark.parametrize("parts", [2, 3, 5])
def test_partitions_cover_exactly_once_edges(parts):
    full = sorted(forms(enumerate_graphs_by_edges(8)))
    pieces = []
    for i in range(parts):
        pieces += forms(enumerate_graphs_by_edges(8, part=i, parts=parts))
    assert sorted(pieces) == full


@pytest.mark.parametrize("parts", [2, 3])
def test_partitions_cover_exactly_once_vertices(parts):
    full = sorted(forms(enumerate_graphs_by_vertices(7)))
    pieces = []
    for i in range(parts):
        pieces += forms(enumerate_graphs_by_vertices(7, part=i, parts=parts))
    assert sorted(pieces) == full


def test_resume_and_dump(tmp_path):
    stream = enumerate_graphs_by_edges(6)
    all6 = [to_graph6(g) for g in stream]
    assert stream.cursor == 68
    tail = [to_graph6(g) for g in stream.resume(60)]
    assert tail == all6[60:]
    path = tmp_path / "m6.g6"
    assert enumerate_graphs_by_edges(6).dump(path) == 68
    assert [to_graph6(g) for g in read_graph6_lines(path)] == all6
    assert path.read_text().endswith("\n")


def test_caps(monkeypatch):
    assert caps() == (12, 10)
    with pytest.raises(CapExceeded):
        enumerate_graphs_by_edges(13)
    with pytest.raises(CapExceeded):
        enumerate_graphs_by_vertices(11)
    with pytest.raises(CapExceeded):
        enumerate_graphs_by_edges(5, cap=4)
    monkeypatch.setenv("SPECTRAL_TURAN_CAP", "4,3")
    assert caps() == (4, 3)
    with pytest.raises(CapExceeded):
        enumerate_graphs_by_edges(5)
    with pytest.raises(CapExceeded):
        enumerate_graphs_by_vertices(4)


def test_estimates():
    assert estimated_count("edges", 12) == 52944
    assert estimated_count("vertices", 10) == 12005168
    assert estimated_count("edges", 40) is None
    assert list(KNOWN_COUNTS_BY_EDGES[1:11]) == EDGE_COUNTS


def test_connected_only_edge_graphs_are_connected():
    from spectral_turan.enumerate import connected_by_edges_raw
    from spectral_turan.graph import Graph

    # connected graphs by edge count: 1, 1, 3, 5, 12, 30, 79, 227
    for m, want in [(1, 1), (2, 1), (3, 3), (4, 5), (5, 12), (6, 30), (7, 79), (8, 227)]:
        gs = [Graph(len(r), r) for r in connected_by_edges_raw(m)]
        assert len(gs) == want
        assert all(is_connected(g) and g.m == m for g in gs)
        assert len(set(forms(gs))) == want


# random graphs ----------------------------------------------------------------

def test_random_graph_deterministic():
    assert random_graph(10, 15, 7) == random_graph(10, 15, 7)
    assert random_graph(10, 15, 7).m == 15
    with pytest.raises(GraphError):
        random_graph(3, 4, 0)


def test_random_tree():
    t = random_tree(12, 5)
    assert t.m == 11 and is_connected(t)
    assert random_tree(12, 5) == t


@given(st.integers(3, 10), st.integers(0, 10**6), st.data())
def test_rotation_preserves_size(n, seed, data):
    m = data.draw(st.integers(1, n * (n - 1) // 2 - 1))
    g = random_graph(n, m, seed)
    h = mutate_edge_rotation(g, seed)
    assert h.m == g.m and h.n == g.n
    diff = set(g.edges()) ^ set(h.edges())
    assert len(diff) == 2
    a, b = diff
    assert len(set(a) & set(b)) == 1


def test_rotation_without_moves():
    with pytest.raises(GraphError, match="no legal"):
        mutate_edge_rotation(graph_from_edges(2, [(0, 1)]), 0)
