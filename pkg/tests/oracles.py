"""Independent reference implementations used only by the tests."""

import itertools

import networkx as nx
import sympy


def classes_by_vertices(n: int) -> int:
    """Isomorphism classes on n labelled vertices by orbit marking.

    Every labelled graph is a bitmask over the vertex pairs; the first
    unmarked mask starts a new class and every relabelling of it is marked.
    """
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    maps = []
    for perm in itertools.permutations(range(n)):
        maps.append([index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs])
    seen = bytearray(1 << len(pairs))
    classes = 0
    for mask in range(1 << len(pairs)):
        if seen[mask]:
            continue
        classes += 1
        bits = [i for i in range(len(pairs)) if mask >> i & 1]
        for mp in maps:
            img = 0
            for i in bits:
                img |= 1 << mp[i]
            seen[img] = 1
    return classes


def _invariant(g: nx.Graph):
    return (g.number_of_nodes(), tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g))


def classes_by_edges(m: int) -> list[nx.Graph]:
    """Isolate-free classes with m edges via one-edge extension and networkx dedup.

    Every isolate-free graph with m edges arises from one with m-1 edges by
    adding an edge between old vertices, an edge to one new vertex, or a new
    disjoint P2 (delete any edge, then drop the isolated vertices it leaves).
    """
    level = [nx.Graph([(0, 1)])]
    for _ in range(m - 1):
        buckets: dict = {}
        out = []
        for g in level:
            n = g.number_of_nodes()
            cands = []
            for u, v in itertools.combinations(range(n), 2):
                if not g.has_edge(u, v):
                    cands.append((u, v))
            cands += [(u, n) for u in range(n)]
            cands.append((n, n + 1))
            for u, v in cands:
                h = g.copy()
                h.add_edge(u, v)
                key = _invariant(h)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, k) for k in bucket):
                    bucket.append(h)
                    out.append(h)
        level = out
    return level if m >= 1 else []


def dense_oracle(g, which="adjacency"):
    """Largest real root of det(xI - M) from sympy's characteristic polynomial."""
    a = sympy.zeros(g.n, g.n)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    if which == "signless":
        for u in range(g.n):
            a[u, u] = g.degree(u)
    # exact real-root isolation: np.roots loses ~sqrt(eps) on repeated roots
    poly = a.charpoly()
    return float(max(poly.real_roots()).evalf(30))
