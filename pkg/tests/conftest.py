import itertools

import networkx as nx
from hypothesis import strategies as st

from spectral_turan.graph import Graph, graph_from_edges


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return graph_from_edges(n, chosen)


@st.composite
def connected_graphs(draw, min_n=2, max_n=9):
    n = draw(st.integers(min_n, max_n))
    # random spanning tree, then extra edges
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    rest = [p for p in itertools.combinations(range(n), 2) if p not in edges]
    if rest:
        edges.update(draw(st.lists(st.sampled_from(rest), unique=True)))
    return graph_from_edges(n, sorted(edges))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
