"""Isomorph-free generation of graphs by vertex count and by edge count.

Both generators use canonical augmentation.  A child is kept only when the
augmentation that produced it lies in the automorphism orbit of the child's
canonical reduction, and parents extend themselves only once per orbit of
their own automorphism group.  Cheap invariants (degrees, then the equitable
partition) settle most children before a full canonical labelling is needed.

By-vertices growth adds a vertex adjacent to a subset; the canonical
reduction deletes a vertex of maximum degree.  By-edges growth produces
connected graphs by adding either an edge between existing vertices or a
pendant edge to a new vertex; the canonical reduction deletes a pendant edge
when leaves exist and a non-bridge edge otherwise.  Graphs with several
components are multisets of connected graphs and are assembled directly.
"""

from __future__ import annotations

import os
import random
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Iterable, Iterator, Sequence

from .canon import Labelling, canonical_labelling, degree_cells, orbit_partition, refine
from .graph import Graph, GraphError, from_graph6, iter_bits, to_graph6

DEFAULT_MAX_EDGES = 12
DEFAULT_MAX_VERTICES = 10

# Isomorphism-class counts, used for progress estimates only.
KNOWN_COUNTS_BY_EDGES = (1, 1, 2, 5, 11, 26, 68, 177, 497, 1476, 4613, 15216, 52944, 193367, 740226)
KNOWN_COUNTS_BY_VERTICES = (1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168, 1018997864)


class CapExceeded(ValueError):
    pass


def caps() -> tuple[int, int]:
    """``(max_edges, max_vertices)``, overridable through SPECTRAL_TURAN_CAP.

    The variable holds ``EDGES`` or ``EDGES,VERTICES`` (e.g. ``14`` or ``13,11``).
    """
    me, mv = DEFAULT_MAX_EDGES, DEFAULT_MAX_VERTICES
    raw = os.environ.get("SPECTRAL_TURAN_CAP", "").strip()
    if raw:
        parts = [p.strip() for p in raw.split(",")]
        me = int(parts[0])
        if len(parts) > 1 and parts[1]:
            mv = int(parts[1])
    return me, mv


def estimated_count(kind: str, size: int) -> int | None:
    table = KNOWN_COUNTS_BY_EDGES if kind == "edges" else KNOWN_COUNTS_BY_VERTICES
    return table[size] if 0 <= size < len(table) else None


class EnumStream:
    """Deterministic, resumable stream of graphs.

    ``cursor`` counts graphs emitted so far (including skipped ones on
    resume); ``resume(k)`` gives a fresh stream starting at position ``k``.
    """

    def __init__(self, factory: Callable[[], Iterator[Graph]], params: dict, start: int = 0):
        self._factory = factory
        self.params = dict(params)
        self.start = start
        self.cursor = start

    def __iter__(self) -> Iterator[Graph]:
        self.cursor = self.start
        for i, g in enumerate(self._factory()):
            if i < self.start:
                continue
            self.cursor = i + 1
            yield g

    def resume(self, cursor: int) -> "EnumStream":
        return EnumStream(self._factory, self.params, cursor)

    def dump(self, path) -> int:
        return write_graph6_lines(path, self)


def write_graph6_lines(path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
            count += 1
    return count


def read_graph6_lines(path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return [from_graph6(line) for line in fh if line.strip()]


# ---------------------------------------------------------------------------
# helpers

def _set_orbit(s: int, gens) -> set[int]:
    """Orbit of a vertex subset (bit mask) under the group generated by ``gens``."""
    orbit = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for g in gens:
            y = 0
            for v in iter_bits(x):
                y |= 1 << g[v]
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return orbit


def _edge_orbit(e: tuple[int, int], gens) -> set[tuple[int, int]]:
    orbit = {e}
    stack = [e]
    while stack:
        a, b = stack.pop()
        for g in gens:
            x, y = g[a], g[b]
            f = (x, y) if x < y else (y, x)
            if f not in orbit:
                orbit.add(f)
                stack.append(f)
    return orbit


def _cell_index(cells) -> dict[int, int]:
    return {v: i for i, c in enumerate(cells) for v in c}


def _is_bridge(rows: Sequence[int], a: int, b: int) -> bool:
    seen = 1 << a
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            r = rows[v]
            if v == a:
                r &= ~(1 << b)
            elif v == b:
                r &= ~(1 << a)
            nxt |= r
        frontier = nxt & ~seen
        seen |= nxt
        if (seen >> b) & 1:
            return False
    return True


def _labelling(rows, lab: Labelling | None) -> Labelling:
    return lab if lab is not None else canonical_labelling(rows)


# ---------------------------------------------------------------------------
# by vertices

def _accept_new_vertex(child: list[int], v: int, d: int):
    """Is the new vertex ``v`` (of maximum degree ``d``) the canonical deletion?

    Returns ``(accepted, labelling-or-None)``.
    """
    if not any(r.bit_count() == d for r in child[:v]):
        return True, None
    cells = refine(child, degree_cells(child))
    last = cells[-1]
    if v not in last:
        return False, None
    if len(last) == 1:
        return True, None
    lab = canonical_labelling(child, cells)
    pos = lab.position
    chosen = max(last, key=pos.__getitem__)
    orbits = lab.orbits()
    return orbits[v] == orbits[chosen], lab


def _vertex_children(rows: Sequence[int], gens) -> Iterator[tuple[list[int], Labelling | None]]:
    n = len(rows)
    deg = [r.bit_count() for r in rows]
    maxdeg = max(deg, default=0)
    seen: set[int] | None = set() if gens else None
    bit_n = 1 << n
    for size in range(maxdeg, n + 1):
        pool = [w for w in range(n) if deg[w] < size]
        for combo in combinations(pool, size):
            s = 0
            for w in combo:
                s |= 1 << w
            if seen is not None:
                if s in seen:
                    continue
                seen |= _set_orbit(s, gens)
            child = [r | bit_n if (s >> i) & 1 else r for i, r in enumerate(rows)]
            child.append(s)
            ok, lab = _accept_new_vertex(child, n, size)
            if ok:
                yield child, lab


def _grow_vertices(rows, lab, target) -> Iterator[list[int]]:
    if len(rows) == target:
        yield rows
        return
    gens = _labelling(rows, lab).generators
    for child, clab in _vertex_children(rows, gens):
        yield from _grow_vertices(child, clab, target)


def _vertex_level(level: int) -> list[list[int]]:
    return list(_grow_vertices([0], None, level))


def graphs_by_vertices_raw(n: int, part: int = 0, parts: int = 1) -> Iterator[list[int]]:
    """Adjacency rows of one representative per class on ``n`` vertices.

    With ``parts > 1`` only the sub-stream ``part`` is produced; sub-streams
    are disjoint and their union is the full stream.
    """
    if n == 0:
        if part == 0:
            yield []
        return
    split = max(1, min(n, n - 3))
    roots = _vertex_level(split)
    for idx, root in enumerate(roots):
        if idx % parts == part:
            yield from _grow_vertices(root, None, n)


def enumerate_graphs_by_vertices(
    n: int, part: int = 0, parts: int = 1, cap: int | None = None
) -> EnumStream:
    limit = caps()[1] if cap is None else cap
    if n < 1:
        raise GraphError("n must be >= 1")
    if n > limit:
        raise CapExceeded(f"n={n} exceeds vertex cap {limit}")

    def factory():
        for rows in graphs_by_vertices_raw(n, part, parts):
            yield Graph(n, rows, check=False)

    return EnumStream(factory, {"kind": "vertices", "n": n, "part": part, "parts": parts})


# ---------------------------------------------------------------------------
# connected graphs by edges

def _accept_pendant(child: list[int], leaf: int):
    deg = [r.bit_count() for r in child]

    def key(w):
        return deg[(child[w] & -child[w]).bit_length() - 1]

    k0 = key(leaf)
    cand = []
    for w in range(len(child)):
        if deg[w] == 1:
            k = key(w)
            if k > k0:
                return False, None
            if k == k0:
                cand.append(w)
    if len(cand) == 1:
        return True, None
    cells = refine(child, degree_cells(child))
    ci = _cell_index(cells)
    top = max(ci[w] for w in cand)
    if ci[leaf] != top:
        return False, None
    cand = [w for w in cand if ci[w] == top]
    if len(cand) == 1:
        return True, None
    lab = canonical_labelling(child, cells)
    pos = lab.position
    chosen = max(cand, key=pos.__getitem__)
    orbits = lab.orbits()
    return orbits[leaf] == orbits[chosen], lab


def _accept_cycle_edge(child: list[int], u: int, v: int):
    deg = [r.bit_count() for r in child]

    def key(a, b):
        da, db = deg[a], deg[b]
        return (da, db) if da >= db else (db, da)

    k0 = key(u, v)
    cand = []
    for a, r in enumerate(child):
        for b in iter_bits(r >> (a + 1)):
            b += a + 1
            k = key(a, b)
            if k < k0:
                continue
            if (a, b) == (u, v):
                cand.append((a, b))
            elif not _is_bridge(child, a, b):
                if k > k0:
                    return False, None
                cand.append((a, b))
    if len(cand) == 1:
        return True, None
    cells = refine(child, degree_cells(child))
    ci = _cell_index(cells)

    def key2(e):
        x, y = ci[e[0]], ci[e[1]]
        return (x, y) if x >= y else (y, x)

    top = max(key2(e) for e in cand)
    if key2((u, v)) != top:
        return False, None
    cand = [e for e in cand if key2(e) == top]
    if len(cand) == 1:
        return True, None
    lab = canonical_labelling(child, cells)
    pos = lab.position

    def canon_key(e):
        x, y = pos[e[0]], pos[e[1]]
        return (x, y) if x >= y else (y, x)

    chosen = max(cand, key=canon_key)
    return chosen in _edge_orbit((u, v), lab.generators), lab


def _edge_children(rows: Sequence[int], gens) -> Iterator[tuple[list[int], Labelling | None]]:
    n = len(rows)
    reps = orbit_partition(n, gens) if gens else list(range(n))
    bit_n = 1 << n
    # pendant edge to a new vertex
    for u in range(n):
        if reps[u] != u:
            continue
        child = list(rows)
        child[u] |= bit_n
        child.append(1 << u)
        ok, lab = _accept_pendant(child, n)
        if ok:
            yield child, lab
    # edge between existing vertices; the child must be leafless
    leaves = [w for w in range(n) if rows[w].bit_count() == 1]
    if len(leaves) > 2:
        return
    need = 0
    for w in leaves:
        need |= 1 << w
    seen: set[tuple[int, int]] | None = set() if gens else None
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            if (ru >> v) & 1:
                continue
            if need & ~((1 << u) | (1 << v)):
                continue
            if seen is not None:
                if (u, v) in seen:
                    continue
                seen |= _edge_orbit((u, v), gens)
            child = list(rows)
            child[u] |= 1 << v
            child[v] |= 1 << u
            ok, lab = _accept_cycle_edge(child, u, v)
            if ok:
                yield child, lab


def _grow_edges(rows, lab, e: int, target: int, sink: list | None) -> Iterator[list[int]]:
    if sink is not None:
        sink[e].append(rows)
    if e == target:
        yield rows
        return
    gens = _labelling(rows, lab).generators
    for child, clab in _edge_children(rows, gens):
        yield from _grow_edges(child, clab, e + 1, target, sink)


_K2 = [0b10, 0b01]


_LEVELS: list[tuple[tuple[int, ...], ...]] = []


def connected_levels(max_e: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Rows of every connected class with ``e`` edges, for ``e = 0..max_e``.

    Level 0 holds the single-vertex graph.  Results are cached per process.
    """
    global _LEVELS
    if len(_LEVELS) <= max_e:
        levels: list[list] = [[] for _ in range(max_e + 1)]
        levels[0].append([0])
        if max_e >= 1:
            for _ in _grow_edges(list(_K2), None, 1, max_e, levels):
                pass
        _LEVELS = [tuple(tuple(r) for r in lvl) for lvl in levels]
    return tuple(_LEVELS[: max_e + 1])


def connected_by_edges_raw(m: int, part: int = 0, parts: int = 1) -> Iterator[list[int]]:
    if m == 0:
        if part == 0:
            yield [0]
        return
    if m <= 2:
        if part == 0:
            for rows in connected_levels(m)[m]:
                yield list(rows)
        return
    split = max(1, m - 2)
    roots = connected_levels(split)[split]
    for idx, root in enumerate(roots):
        if idx % parts == part:
            yield from _grow_edges(list(root), None, split, m, None)


def _partitions(m: int, largest: int) -> Iterator[list[int]]:
    """Integer partitions of ``m`` into parts <= ``largest``, parts descending."""
    if m == 0:
        yield []
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield [first] + rest


def _union_rows(pieces: Sequence[Sequence[int]]) -> list[int]:
    rows: list[int] = []
    offset = 0
    for p in pieces:
        rows.extend(r << offset for r in p)
        offset += len(p)
    return rows


def isolate_free_by_edges_raw(m: int, part: int = 0, parts: int = 1) -> Iterator[list[int]]:
    """Connected classes first, then multisets of smaller connected classes."""
    yield from connected_by_edges_raw(m, part, parts)
    if m < 2:
        return
    levels = connected_levels(m - 1)
    idx = 0
    for parts_list in _partitions(m, m - 1):
        sizes = sorted(set(parts_list), reverse=True)
        choices = [
            combinations_with_replacement(range(len(levels[e])), parts_list.count(e)) for e in sizes
        ]
        for pick in product(*choices):
            if idx % parts == part:
                pieces = [levels[e][i] for e, chosen in zip(sizes, pick) for i in chosen]
                yield _union_rows(pieces)
            idx += 1


def enumerate_graphs_by_edges(
    m: int,
    no_isolated: bool = True,
    n: int | None = None,
    part: int = 0,
    parts: int = 1,
    cap: int | None = None,
) -> EnumStream:
    """Every class with exactly ``m`` edges.

    With ``no_isolated`` (the default) the classes have no isolated vertices.
    Otherwise ``n`` is required and classes on exactly ``n`` vertices are
    produced, padded with isolated vertices.
    """
    limit = caps()[0] if cap is None else cap
    if m > limit:
        raise CapExceeded(f"m={m} exceeds edge cap {limit}")
    if no_isolated and m < 1:
        raise GraphError("m must be >= 1")
    if not no_isolated and n is None:
        raise GraphError("n is required when isolated vertices are allowed")

    def factory():
        if no_isolated:
            for rows in isolate_free_by_edges_raw(m, part, parts):
                yield Graph(len(rows), rows, check=False)
            return
        if m == 0:
            if part == 0:
                yield Graph(n, [0] * n, check=False)
            return
        for rows in isolate_free_by_edges_raw(m, part, parts):
            if len(rows) <= n:
                yield Graph(n, list(rows) + [0] * (n - len(rows)), check=False)

    params = {"kind": "edges", "m": m, "no_isolated": no_isolated, "n": n, "part": part, "parts": parts}
    return EnumStream(factory, params)


# ---------------------------------------------------------------------------
# random graphs and edge rotation

def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_graph(n: int, m: int, seed) -> Graph:
    pairs = [(u, v) for v in range(n) for u in range(v)]
    if not 0 <= m <= len(pairs):
        raise GraphError(f"infeasible (n={n}, m={m})")
    rows = [0] * n
    for u, v in _rng(seed).sample(pairs, m):
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows, check=False)


def random_tree(n: int, seed) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n < 1:
        raise GraphError("tree needs n >= 1")
    rows = [0] * n
    if n == 1:
        return Graph(1, rows, check=False)
    rng = _rng(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    for x in seq:
        leaf = next(i for i in range(n) if degree[i] == 1)
        rows[leaf] |= 1 << x
        rows[x] |= 1 << leaf
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(n, rows, check=False)


def mutate_edge_rotation(g: Graph, seed) -> Graph:
    """Move one endpoint of a random edge to a random non-neighbour of the other."""
    rng = _rng(seed)
    full = (1 << g.n) - 1
    rows = g.rows
    movable = []
    for a, b in g.edges():
        ends = []
        for keep, move in ((a, b), (b, a)):
            targets = full & ~rows[keep] & ~(1 << keep)
            if targets:
                ends.append((keep, move, targets))
        if ends:
            movable.append(ends)
    if not movable:
        raise GraphError("no legal edge rotation")
    keep, move, targets = rng.choice(rng.choice(movable))
    w = rng.choice(list(iter_bits(targets)))
    new = list(rows)
    new[keep] &= ~(1 << move)
    new[move] &= ~(1 << keep)
    new[keep] |= 1 << w
    new[w] |= 1 << keep
    return Graph(g.n, new, check=False)
