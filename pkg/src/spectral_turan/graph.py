"""Simple undirected graphs stored as adjacency bit rows.

Row ``i`` of a :class:`Graph` is an integer whose bit ``j`` is set when
vertices ``i`` and ``j`` are adjacent.  Python integers are unbounded, so the
same representation serves the small enumeration graphs (one machine word per
row in spirit) and the large family graphs used for certification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed edge lists or invalid family parameters."""


class Graph6Error(ValueError):
    """Raised when a graph6 string cannot be decoded."""


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "rows", "m", "_hash")

    def __init__(self, n: int, rows: Sequence[int], *, check: bool = True):
        rows = tuple(rows)
        if len(rows) != n:
            raise GraphError(f"expected {n} rows, got {len(rows)}")
        total = 0
        if check:
            full = (1 << n) - 1
            for i, r in enumerate(rows):
                if r & ~full:
                    raise GraphError(f"row {i} has bits outside 0..{n - 1}")
                if (r >> i) & 1:
                    raise GraphError(f"loop at vertex {i}")
                for j in iter_bits(r):
                    if not (rows[j] >> i) & 1:
                        raise GraphError(f"asymmetric adjacency between {i} and {j}")
        for r in rows:
            total += r.bit_count()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "m", total // 2)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, graph6={to_graph6(self)!r})"

    def __reduce__(self):
        return (Graph, (self.n, self.rows), None)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, r in enumerate(self.rows):
            for v in iter_bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        new = [0] * self.n
        for v, r in enumerate(self.rows):
            row = 0
            for w in iter_bits(r):
                row |= 1 << perm[w]
            new[perm[v]] = row
        return Graph(self.n, new, check=False)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in edge {(u, v)} for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if (rows[u] >> v) & 1:
            raise GraphError(f"duplicate edge {(u, v)}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows, check=False)


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n, check=False)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, rows, check=False)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled in the given order."""
    pos = {v: i for i, v in enumerate(vertices)}
    rows = []
    for v in vertices:
        row = 0
        for w in iter_bits(g.rows[v]):
            if w in pos:
                row |= 1 << pos[w]
        rows.append(row)
    return Graph(len(vertices), rows, check=False)


# ---------------------------------------------------------------------------
# graph6

def _n_to_graph6(n: int) -> str:
    if n < 0:
        raise Graph6Error("negative order")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error("order too large for graph6")


def to_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (no ``>>graph6<<`` header, no newline)."""
    out = [_n_to_graph6(g.n)]
    acc = 0
    nbits = 0
    rows = g.rows
    for j in range(1, g.n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(v < 0 or v > 63 for v in vals):
        raise Graph6Error(f"character outside graph6 range in {s!r}")
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            if len(vals) < 8:
                raise Graph6Error("truncated 8-byte order field")
            n = 0
            for v in vals[2:8]:
                n = (n << 6) | v
            body = vals[8:]
        else:
            if len(vals) < 4:
                raise Graph6Error("truncated 4-byte order field")
            n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
            body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if k % 6 and body[-1] & ((1 << (6 - k % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, rows, check=False)


# ---------------------------------------------------------------------------
# named families

FAMILY_KINDS = (
    "star",
    "star_plus_edge",
    "star_pendant_edge",
    "star_union_p2",
    "path",
    "cycle",
    "friendship_odd",
    "friendship_even_variant",
    "complete_bipartite",
)


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family member.

    ``star`` takes either ``n`` (vertices) or ``m`` (edges, ``m = n - 1``).
    ``star_plus_edge``, ``star_pendant_edge`` and ``star_union_p2`` are sized
    by their edge count ``m`` and build K_{1,m-1}+e, K_{1,m-1}^e and
    K_{1,m-1} u P_2 respectively.  ``path``, ``cycle`` and the two friendship
    kinds take ``n``; ``complete_bipartite`` takes part sizes ``a`` and ``b``.
    """

    kind: str
    n: int | None = None
    m: int | None = None
    a: int | None = None
    b: int | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise GraphError(f"unknown family {self.kind!r}")
        k = self.kind
        if k == "star":
            if (self.n is None) == (self.m is None):
                raise GraphError("star needs exactly one of n or m")
            if self.edge_count < 1:
                raise GraphError("star needs at least one edge")
        elif k in ("star_plus_edge", "star_pendant_edge", "star_union_p2"):
            minimum = {"star_plus_edge": 3, "star_pendant_edge": 3, "star_union_p2": 2}[k]
            if self.m is None or self.m < minimum:
                raise GraphError(f"{k} needs m >= {minimum}")
        elif k == "path":
            if self.n is None or self.n < 1:
                raise GraphError("path needs n >= 1")
        elif k == "cycle":
            if self.n is None or self.n < 3:
                raise GraphError("cycle needs n >= 3")
        elif k == "friendship_odd":
            if self.n is None or self.n < 3 or self.n % 2 == 0:
                raise GraphError("friendship_odd needs odd n >= 3")
        elif k == "friendship_even_variant":
            if self.n is None or self.n < 4 or self.n % 2:
                raise GraphError("friendship_even_variant needs even n >= 4")
        elif k == "complete_bipartite":
            if self.a is None or self.b is None or self.a < 1 or self.b < 1:
                raise GraphError("complete_bipartite needs a, b >= 1")

    @property
    def edge_count(self) -> int:
        if self.kind == "star":
            return self.m if self.m is not None else self.n - 1
        return make_family(self).m


def _star_edges(leaves: int) -> list[tuple[int, int]]:
    return [(0, i) for i in range(1, leaves + 1)]


def make_family(spec: FamilySpec) -> Graph:
    """Build the named graph with the hub (if any) labelled 0."""
    k = spec.kind
    if k == "star":
        t = spec.edge_count
        return graph_from_edges(t + 1, _star_edges(t))
    if k == "star_plus_edge":
        m = spec.m
        return graph_from_edges(m, _star_edges(m - 1) + [(1, 2)])
    if k == "star_pendant_edge":
        m = spec.m
        return graph_from_edges(m + 1, _star_edges(m - 1) + [(1, m)])
    if k == "star_union_p2":
        m = spec.m
        return graph_from_edges(m + 2, _star_edges(m - 1) + [(m, m + 1)])
    if k == "path":
        n = spec.n
        return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if k == "cycle":
        n = spec.n
        return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if k == "friendship_odd":
        n = spec.n
        edges = _star_edges(n - 1) + [(i, i + 1) for i in range(1, n, 2)]
        return graph_from_edges(n, edges)
    if k == "friendship_even_variant":
        n = spec.n
        edges = _star_edges(n - 1) + [(i, i + 1) for i in range(1, n - 1, 2)]
        return graph_from_edges(n, edges)
    a, b = spec.a, spec.b
    return graph_from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# ---------------------------------------------------------------------------
# predicates

def max_degree(g: Graph) -> int:
    return max((r.bit_count() for r in g.rows), default=0)


def min_degree(g: Graph) -> int:
    return min((r.bit_count() for r in g.rows), default=0)


def contains_star(g: Graph, t: int) -> bool:
    if t < 1:
        raise GraphError("star size t must be >= 1")
    return max_degree(g) >= t


def c4_witness(g: Graph) -> tuple[int, int, int, int] | None:
    """A 4-cycle ``(u, a, v, b)`` if one exists: ``u`` and ``v`` share ``a`` and ``b``."""
    rows = g.rows
    for u in range(g.n):
        ru = rows[u]
        if ru.bit_count() < 2:
            continue
        for v in range(u + 1, g.n):
            common = ru & rows[v]
            if common.bit_count() >= 2:
                a, b = list(iter_bits(common))[:2]
                return (u, a, v, b)
    return None


def contains_c4(g: Graph) -> bool:
    rows = g.rows
    n = g.n
    for u in range(n):
        ru = rows[u]
        if ru.bit_count() < 2:
            continue
        for v in range(u + 1, n):
            if (ru & rows[v]).bit_count() >= 2:
                return True
    return False


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = 0
    out = []
    rows = g.rows
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(list(iter_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_bipartite(g: Graph) -> bool:
    rows = g.rows
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in iter_bits(rows[v]):
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def remove_isolated_vertices(g: Graph) -> Graph:
    keep = [v for v in range(g.n) if g.rows[v]]
    if len(keep) == g.n:
        return g
    return induced_subgraph(g, keep)


# ---------------------------------------------------------------------------
# neighbourhood partition around a hub

@dataclass(frozen=True)
class NeighborhoodPartition:
    """Split of V(G) into {hub}, A = N(hub), and B = B1 u B2.

    B1 holds the vertices of B with no neighbour inside B; B2 the rest.
    """

    hub: int
    a_set: frozenset
    b1_set: frozenset
    b2_set: frozenset
    e_a: int
    e_b: int
    e_a_b1: int
    e_a_b2: int

    @property
    def b_set(self) -> frozenset:
        return self.b1_set | self.b2_set

    def edge_total(self) -> int:
        return len(self.a_set) + self.e_a + self.e_b + self.e_a_b1 + self.e_a_b2


def _mask(vs: Iterable[int]) -> int:
    x = 0
    for v in vs:
        x |= 1 << v
    return x


def degree_into(g: Graph, u: int, vertices: Iterable[int] | int) -> int:
    """Number of neighbours of ``u`` in ``vertices`` (a set or a bit mask)."""
    mask = vertices if isinstance(vertices, int) else _mask(vertices)
    return (g.rows[u] & mask).bit_count()


def neighborhood_partition(g: Graph, hub: int) -> NeighborhoodPartition:
    if not 0 <= hub < g.n:
        raise GraphError(f"hub {hub} out of range")
    rows = g.rows
    a_mask = rows[hub]
    b_mask = ((1 << g.n) - 1) & ~a_mask & ~(1 << hub)
    b1 = 0
    for u in iter_bits(b_mask):
        if not rows[u] & b_mask:
            b1 |= 1 << u
    b2 = b_mask & ~b1
    e_a = sum((rows[u] & a_mask).bit_count() for u in iter_bits(a_mask)) // 2
    e_b = sum((rows[u] & b_mask).bit_count() for u in iter_bits(b_mask)) // 2
    e_a_b1 = sum((rows[u] & a_mask).bit_count() for u in iter_bits(b1))
    e_a_b2 = sum((rows[u] & a_mask).bit_count() for u in iter_bits(b2))
    return NeighborhoodPartition(
        hub=hub,
        a_set=frozenset(iter_bits(a_mask)),
        b1_set=frozenset(iter_bits(b1)),
        b2_set=frozenset(iter_bits(b2)),
        e_a=e_a,
        e_b=e_b,
        e_a_b1=e_a_b1,
        e_a_b2=e_a_b2,
    )
