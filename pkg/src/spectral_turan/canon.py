"""Canonical labelling by partition refinement and pruned backtracking.

The search follows the classical individualise-and-refine scheme.  Ordered
partitions are refined to equitable ones, the first non-singleton cell is
branched on, and every discrete partition (leaf) is scored by the adjacency
rows it induces.  The largest score wins.  Leaves with equal scores give
automorphisms, which prune sibling branches in the same orbit and let the
search jump back to the common ancestor of the two leaves.  The automorphisms
found generate the full automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, iter_bits, to_graph6


def refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Cells split by the vector of neighbour counts into every current cell;
    sub-cells are ordered by that vector so the result is labelling-invariant.
    """
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                r = rows[v]
                key = tuple((r & mk).bit_count() for mk in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                changed = True
                for key in sorted(groups):
                    out.append(groups[key])
        cells = out
        if not changed:
            return cells


def degree_cells(rows: Sequence[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v, r in enumerate(rows):
        groups.setdefault(r.bit_count(), []).append(v)
    return [groups[d] for d in sorted(groups)]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def orbit_partition(n: int, generators: Sequence[Sequence[int]]) -> list[int]:
    """Orbit representative (smallest member) of every vertex."""
    uf = _UnionFind(n)
    for g in generators:
        for v in range(n):
            uf.union(v, g[v])
    return [uf.find(v) for v in range(n)]


@dataclass(frozen=True)
class Labelling:
    """Outcome of a canonical labelling run.

    ``order[i]`` is the vertex placed at canonical position ``i``;
    ``rows`` are the adjacency rows of the relabelled graph; ``generators``
    are automorphisms (as vertex maps) generating Aut(G).
    """

    order: tuple[int, ...]
    rows: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def orbits(self) -> list[int]:
        return orbit_partition(len(self.order), self.generators)


class _Search:
    def __init__(self, rows: Sequence[int]):
        self.rows = rows
        self.n = len(rows)
        self.nbrs = [list(iter_bits(r)) for r in rows]
        self.first = None  # (cert, order, path)
        self.best = None
        self.gens: list[tuple[int, ...]] = []

    def _cert(self, order):
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        out = []
        nbrs = self.nbrs
        for v in order:
            row = 0
            for w in nbrs[v]:
                row |= 1 << pos[w]
            out.append(row)
        return tuple(out)

    def _leaf(self, cells, path):
        order = [c[0] for c in cells]
        cert = self._cert(order)
        if self.first is None:
            self.first = self.best = (cert, order, list(path))
            return None
        for ref in (self.first, self.best):
            if cert == ref[0]:
                gamma = [0] * self.n
                for a, b in zip(ref[1], order):
                    gamma[a] = b
                gamma = tuple(gamma)
                if any(gamma[i] != i for i in range(self.n)):
                    self.gens.append(gamma)
                ref_path = ref[2]
                level = 0
                while level < len(path) and level < len(ref_path) and path[level] == ref_path[level]:
                    level += 1
                return level
        if cert > self.best[0]:
            self.best = (cert, order, list(path))
        return None

    def node(self, cells, path):
        if len(cells) == self.n:
            return self._leaf(cells, path)
        level = len(path)
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = sorted(cells[idx])
        explored: list[int] = []
        seen_gens = -1
        reps = None
        for v in target:
            if explored:
                if len(self.gens) != seen_gens:
                    seen_gens = len(self.gens)
                    fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                    reps = orbit_partition(self.n, fixing) if fixing else None
                if reps is not None and any(reps[v] == reps[u] for u in explored):
                    continue
            rest = [u for u in cells[idx] if u != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            child = refine(self.rows, child)
            path.append(v)
            jump = self.node(child, path)
            path.pop()
            explored.append(v)
            if jump is not None and jump < level:
                return jump
        return None


def canonical_labelling(rows: Sequence[int], cells: list[list[int]] | None = None) -> Labelling:
    """Canonical labelling of the graph given by adjacency ``rows``.

    ``cells`` may supply an isomorphism-invariant starting partition (for
    instance a refined degree partition); by default the degree partition is
    used.  Any invariant start gives a valid canonical form, but forms are
    only comparable between runs that use the same rule.
    """
    n = len(rows)
    if n == 0:
        return Labelling((), (), ())
    start = refine(rows, cells if cells is not None else degree_cells(rows))
    s = _Search(rows)
    s.node(start, [])
    cert, order, _ = s.best
    return Labelling(tuple(order), cert, tuple(s.gens))


@dataclass(frozen=True)
class CanonicalForm:
    """graph6 bytes of the canonically relabelled graph."""

    bytes: bytes

    def __str__(self):
        return self.bytes.decode("ascii")

    def graph(self) -> Graph:
        from .graph import from_graph6

        return from_graph6(self.bytes)


def canonical_graph(g: Graph) -> Graph:
    lab = canonical_labelling(g.rows)
    return Graph(g.n, lab.rows, check=False)


def canonical_form(g: Graph) -> CanonicalForm:
    return CanonicalForm(to_graph6(canonical_graph(g)).encode("ascii"))


def automorphism_generators(g: Graph) -> tuple[tuple[int, ...], ...]:
    return canonical_labelling(g.rows).generators
