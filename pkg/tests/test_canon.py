import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, to_nx
from spectral_turan.canon import (
    automorphism_generators,
    canonical_form,
    canonical_graph,
    refine,
)
from spectral_turan.graph import FamilySpec, Graph, graph_from_edges, make_family


def fam(kind, **kw):
    return make_family(FamilySpec(kind, **kw))


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if (g.n, g.m, sorted(g.degrees())) != (h.n, h.m, sorted(h.degrees())):
        return False
    return any(g.relabel(p) == h for p in itertools.permutations(range(g.n)))


def group_order(n, gens):
    """Size of the permutation group generated by ``gens`` (closure by BFS)."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def test_p4_examples():
    p4 = fam("path", n=4)
    relabelled = p4.relabel([2, 0, 3, 1])
    assert canonical_form(p4) == canonical_form(relabelled)
    assert canonical_form(p4) != canonical_form(fam("star", m=3))


@given(graphs(max_n=9))
def test_idempotent(g):
    c = canonical_graph(g)
    assert canonical_graph(c) == c
    assert canonical_form(c.relabel(list(range(g.n)))) == canonical_form(g)


@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_relabel_invariant(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


def test_canonical_graph_is_isomorphic():
    g = fam("friendship_even_variant", n=8)
    assert nx.is_isomorphic(to_nx(g), to_nx(canonical_graph(g)))


@pytest.mark.parametrize("n", range(1, 6))
def test_form_equality_iff_isomorphic_all_small(n):
    # every labelled graph on n <= 5 vertices, pairwise against class representatives
    pairs = list(itertools.combinations(range(n), 2))
    reps: list[Graph] = []
    forms = []
    for mask in range(1 << len(pairs)):
        g = graph_from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        f = canonical_form(g)
        hits = [r for r, rf in zip(reps, forms) if brute_isomorphic(g, r)]
        assert len(hits) <= 1
        if hits:
            assert f == forms[reps.index(hits[0])]
        else:
            assert f not in forms
            reps.append(g)
            forms.append(f)
    assert len(reps) == [1, 2, 4, 11, 34][n - 1]


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=6, max_n=7), graphs(min_n=6, max_n=7))
def test_form_equality_iff_brute_isomorphic(g, h):
    if g.n != h.n:
        h = graph_from_edges(g.n, [e for e in h.edges() if max(e) < g.n])
    assert (canonical_form(g) == canonical_form(h)) == brute_isomorphic(g, h)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=6, max_n=7), st.randoms(use_true_random=False))
def test_isomorphic_pairs_at_seven(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert brute_isomorphic(g, h)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_generators_generate_full_automorphism_group(g):
    gens = automorphism_generators(g)
    for p in gens:
        assert g.relabel(p) == g
    matcher = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), to_nx(g))
    expected = sum(1 for _ in matcher.isomorphisms_iter())
    assert group_order(g.n, gens) == expected


@pytest.mark.parametrize(
    "g,order",
    [
        (make_family(FamilySpec("cycle", n=6)), 12),
        (make_family(FamilySpec("star", m=5)), 120),
        (make_family(FamilySpec("complete_bipartite", a=3, b=3)), 72),
        (make_family(FamilySpec("friendship_odd", n=7)), 48),
    ],
)
def test_known_group_orders(g, order):
    assert group_order(g.n, automorphism_generators(g)) == order


def test_petersen_and_regular_graphs():
    # vertex-transitive graphs stress the pruning
    pet = nx.petersen_graph()
    g = graph_from_edges(10, list(pet.edges()))
    rng = random.Random(3)
    perm = list(range(10))
    rng.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))
    assert group_order(10, automorphism_generators(g)) == 120


def test_refine_is_equitable():
    g = fam("path", n=5)
    cells = refine(g.rows, [list(range(5))])
    for cell in cells:
        for other in cells:
            mask = sum(1 << v for v in other)
            assert len({(g.rows[v] & mask).bit_count() for v in cell}) == 1
