"""Exhaustive and heuristic checks of the spectral Turan statements.

Every hypothesis of the form ``rho(G) >= t`` or ``q(G) >= t`` is decided in
three tiers: integer degree bounds, a certified power-iteration bracket, and,
when the floating margin is below ``BOUNDARY_MARGIN``, the exact
characteristic-polynomial comparator.  Graphs too large for the exact path
are reported as boundary-undecided instead of being classified.
"""

from __future__ import annotations

import math
import multiprocessing
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
import numpy as np

from . import spectral
from .canon import canonical_form
from .enumerate import (
    CapExceeded,
    caps,
    enumerate_graphs_by_edges,
    enumerate_graphs_by_vertices,
    mutate_edge_rotation,
    random_graph,
    random_tree,
)
from .exact import (
    ExactCapExceeded,
    Relation,
    compare_graph_radii_exact,
    compare_largest_roots,
    adjacency_charpoly,
    compare_rho_squared_exact,
    exact_cap,
    signless_charpoly,
)
from .graph import (
    FamilySpec,
    Graph,
    GraphError,
    components,
    contains_c4,
    from_graph6,
    is_bipartite,
    is_connected,
    iter_bits,
    make_family,
    max_degree,
    neighborhood_partition,
    remove_isolated_vertices,
    to_graph6,
)
from .spectral import ADJACENCY, SIGNLESS, MissingVectorError

BOUNDARY_MARGIN = 1e-6
THEOREM_IDS = ("T1_1", "T1_2", "T1_3", "T1_4", "T1_5", "T1_6")


# ---------------------------------------------------------------------------
# thresholds and three-tier decisions

@dataclass(frozen=True)
class Threshold:
    """An algebraic threshold: the largest real root of ``poly``."""

    value: float
    poly: tuple[int, ...]
    label: str

    @classmethod
    def sqrt(cls, c: int) -> "Threshold":
        return cls(math.sqrt(c), (1, 0, -c), f"sqrt({c})")

    @classmethod
    def integer(cls, t: int) -> "Threshold":
        return cls(float(t), (1, -t), str(t))

    @classmethod
    def from_poly(cls, poly, label: str) -> "Threshold":
        roots = np.roots(np.array(poly, dtype=float))
        real = roots[np.abs(roots.imag) < 1e-9].real
        return cls(float(real.max()), tuple(int(c) for c in poly), label)


def _degree_bounds(g: Graph, which: str) -> tuple[float, float, tuple[int, ...] | None]:
    """Degree-based ``(lower, upper)`` bounds, plus a defining polynomial when they meet.

    A(G): sqrt(max degree) and 2m/n below; per component the smallest of
    max degree, max over edges of sqrt(d_u d_v) and sqrt(2m - n + 1) above.
    Q(G): max degree + 1 and 4m/n below, max over edges of d_u + d_v above.
    """
    deg = g.degrees()
    if g.m == 0:
        return 0.0, 0.0, (1, 0)
    dmax = max(deg)
    if which == SIGNLESS:
        hi = max(deg[u] + deg[v] for u, v in g.edges())
        exact = (1, -hi) if hi == dmax + 1 else None
        return float(max(dmax + 1, 4 * g.m / g.n)), float(hi), exact
    hi_sq = 0
    for comp in components(g):
        if len(comp) < 2:
            continue
        mc = sum(deg[v] for v in comp) // 2
        dprod = max(deg[u] * deg[w] for u in comp for w in iter_bits(g.rows[u]))
        dc = max(deg[v] for v in comp)
        hi_sq = max(hi_sq, min(dc * dc, dprod, 2 * mc - len(comp) + 1))
    exact = (1, 0, -dmax) if hi_sq == dmax else None
    return max(math.sqrt(dmax), 2 * g.m / g.n), math.sqrt(hi_sq), exact


@dataclass(frozen=True)
class Decision:
    relation: Relation | None  # None: boundary-undecided
    method: str  # bound | float | exact | undecided
    estimate: float


def decide(g: Graph, which: str, thr: Threshold, margin: float = BOUNDARY_MARGIN) -> Decision:
    """Relation of the leading eigenvalue of A(G) or Q(G) to ``thr``."""
    lo, hi, pinned = _degree_bounds(g, which)
    t = thr.value
    if lo > t + margin:
        return Decision(Relation.GREATER, "bound", lo)
    if hi < t - margin:
        return Decision(Relation.LESS, "bound", hi)
    if pinned is not None:
        # the bounds coincide, so the eigenvalue is the largest root of ``pinned``
        rel, _ = compare_largest_roots(pinned, thr.poly)
        return Decision(rel, "exact", hi)

    def stop(a, b):
        return a > t + margin or b < t - margin

    lo, val, hi = spectral.radius_bracket(g, which, stop)
    if lo > t + margin:
        return Decision(Relation.GREATER, "float", val)
    if hi < t - margin:
        return Decision(Relation.LESS, "float", val)
    if g.n > exact_cap():
        return Decision(None, "undecided", val)
    p = adjacency_charpoly(g) if which == ADJACENCY else signless_charpoly(g)
    rel, _ = compare_largest_roots(p, thr.poly)
    return Decision(rel, "exact", val)


# ---------------------------------------------------------------------------
# theorem specs

def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def theorem_threshold(tid: str, k: int = 0) -> int:
    """Smallest m at which the theorem is asserted."""
    if tid == "T1_1":
        return 9
    if tid == "T1_2":
        return 26
    if tid == "T1_3":
        return 27
    if tid == "T1_4":
        return max((k * k + 2 * k + 2) ** 2 + k + 1, (2 * k + 3) ** 2 + k + 1)
    if tid == "T1_5":
        return 4
    if tid == "T1_6":
        return max(_ceil_fraction(Fraction(k * k, 2) + 6 * k + 3), 7 * k + 25)
    raise ValueError(f"unknown theorem {tid!r}")


def normalize_theorem_id(tid: str) -> str:
    t = tid.strip().upper().replace(".", "_")
    if not t.startswith("T"):
        t = "T" + t
    if t not in THEOREM_IDS:
        raise ValueError(f"unknown theorem {tid!r}")
    return t


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    m: int
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "id", normalize_theorem_id(self.id))
        if self.m < 1 or self.k < 0:
            raise ValueError("need m >= 1 and k >= 0")

    @property
    def threshold_m(self) -> int:
        return theorem_threshold(self.id, self.k)

    @property
    def below_threshold(self) -> bool:
        return self.m < self.threshold_m

    @property
    def default_strict(self) -> bool:
        return self.id == "T1_1"


def exception_family_specs(m: int) -> list[FamilySpec]:
    return [
        FamilySpec("star", m=m),
        FamilySpec("star_plus_edge", m=m),
        FamilySpec("star_pendant_edge", m=m),
        FamilySpec("star_union_p2", m=m),
    ]


class _Classifier:
    """Per-graph evaluation of one theorem."""

    def __init__(self, spec: TheoremSpec, strict: bool | None = None):
        self.spec = spec
        self.strict = spec.default_strict if strict is None else strict
        m, k = spec.m, spec.k
        tid = spec.id
        self.which = ADJACENCY
        if tid == "T1_1":
            self.thr = Threshold.sqrt(m)
        elif tid == "T1_2":
            self.thr = Threshold.from_poly(spectral.star_plus_edge_cubic(m), f"rho(K_1,{m - 1}+e)")
            self.named = set()
            if m >= 3:
                self.named.add(canonical_form(make_family(FamilySpec("star_plus_edge", m=m))).bytes)
        elif tid == "T1_3":
            self.thr = Threshold.sqrt(m - 1)
            self.named = set()
            for fs in exception_family_specs(m):
                try:
                    self.named.add(canonical_form(make_family(fs)).bytes)
                except GraphError:
                    pass
        elif tid == "T1_4":
            self.thr = Threshold.sqrt(max(m - k, 0))
        elif tid == "T1_5":
            self.which = SIGNLESS
            self.thr = Threshold.integer(m + 1)
        else:
            self.which = SIGNLESS
            self.thr = Threshold.integer(m - k + 1)

    def in_universe(self, g: Graph) -> bool:
        if self.spec.id == "T1_2":
            return is_connected(g) and not is_bipartite(g)
        return True

    def conclusion(self, g: Graph) -> bool:
        tid, m, k = self.spec.id, self.spec.m, self.spec.k
        if tid == "T1_1":
            return contains_c4(g)
        if tid in ("T1_2", "T1_3"):
            return contains_c4(g) or canonical_form(remove_isolated_vertices(g)).bytes in self.named
        if tid == "T1_4":
            return contains_c4(g) or max_degree(g) >= m - k
        if tid == "T1_6":
            return max_degree(g) >= m - k
        raise AssertionError

    def classify(self, g: Graph) -> dict:
        d = decide(g, self.which, self.thr)
        out = {"relation": d.relation.value if d.relation else None, "method": d.method}
        if d.relation is None:
            out.update(hypothesis=None, violation=None)
            return out
        if self.spec.id == "T1_5":
            is_star = g.m >= 1 and max_degree(g) == g.m
            out["hypothesis"] = True
            out["equality"] = d.relation is Relation.EQUAL
            out["violation"] = d.relation is Relation.GREATER or (d.relation is Relation.EQUAL and not is_star)
            out["opposite_violation"] = out["violation"]
            return out
        hyp = d.relation is Relation.GREATER or (d.relation is Relation.EQUAL and not self.strict)
        out["hypothesis"] = hyp
        out["equality"] = d.relation is Relation.EQUAL
        if hyp or d.relation is Relation.EQUAL:
            concl = self.conclusion(g)
            out["violation"] = hyp and not concl
            opp = d.relation is Relation.GREATER or (d.relation is Relation.EQUAL and self.strict)
            out["opposite_violation"] = opp and not concl
        else:
            out["violation"] = False
            out["opposite_violation"] = False
        return out


@dataclass
class TheoremReport:
    spec: TheoremSpec
    strict: bool
    scanned: int = 0
    hypothesis_hits: int = 0
    violations: list[str] = field(default_factory=list)
    equality_witnesses: list[str] = field(default_factory=list)
    boundary_undecided: list[str] = field(default_factory=list)
    opposite_reading_violations: list[str] = field(default_factory=list)
    below_threshold: bool = False
    exact_decisions: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "spec": {"theorem": self.spec.id, "m": self.spec.m, "k": self.spec.k},
            "strict": self.strict,
            "below_threshold": self.below_threshold,
            "threshold_m": self.spec.threshold_m,
            "counts": {
                "scanned": self.scanned,
                "hypothesis_hits": self.hypothesis_hits,
                "violations": len(self.violations),
                "equality_witnesses": len(self.equality_witnesses),
                "boundary_undecided": len(self.boundary_undecided),
                "exact_decisions": self.exact_decisions,
            },
            "witnesses": {
                "violations": self.violations,
                "equality": self.equality_witnesses,
                "opposite_reading_violations": self.opposite_reading_violations,
            },
            "boundary": self.boundary_undecided,
            "timing": {"seconds": round(self.seconds, 3)},
        }


def _canon6(g: Graph) -> str:
    return canonical_form(g).bytes.decode("ascii")


def _scan_theorem(args) -> TheoremReport:
    spec, strict, part, parts, cap = args
    clf = _Classifier(spec, strict)
    rep = TheoremReport(spec, clf.strict, below_threshold=spec.below_threshold)
    for g in enumerate_graphs_by_edges(spec.m, part=part, parts=parts, cap=cap):
        if not clf.in_universe(g):
            continue
        rep.scanned += 1
        c = clf.classify(g)
        if c["method"] == "exact":
            rep.exact_decisions += 1
        if c["hypothesis"] is None:
            rep.boundary_undecided.append(_canon6(g))
            continue
        rep.hypothesis_hits += bool(c["hypothesis"])
        if c["equality"]:
            rep.equality_witnesses.append(_canon6(g))
        if c["violation"]:
            rep.violations.append(_canon6(g))
        if c["opposite_violation"]:
            rep.opposite_reading_violations.append(_canon6(g))
    return rep


def _merge(reports: list[TheoremReport]) -> TheoremReport:
    out = reports[0]
    for r in reports[1:]:
        out.scanned += r.scanned
        out.hypothesis_hits += r.hypothesis_hits
        out.exact_decisions += r.exact_decisions
        out.violations += r.violations
        out.equality_witnesses += r.equality_witnesses
        out.boundary_undecided += r.boundary_undecided
        out.opposite_reading_violations += r.opposite_reading_violations
    for name in ("violations", "equality_witnesses", "boundary_undecided", "opposite_reading_violations"):
        setattr(out, name, sorted(getattr(out, name)))
    return out


def _pool_map(func, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(min(jobs, len(tasks))) as pool:
        return pool.map(func, tasks)


def verify_theorem(
    spec: TheoremSpec, jobs: int = 1, strict: bool | None = None, cap: int | None = None
) -> TheoremReport:
    """Scan every isolate-free class of size ``spec.m`` against the theorem."""
    t0 = time.perf_counter()
    limit = caps()[0] if cap is None else cap
    if spec.m > limit:
        raise CapExceeded(f"m={spec.m} exceeds edge cap {limit}")
    parts = max(1, jobs)
    reports = _pool_map(_scan_theorem, [(spec, strict, i, parts, limit) for i in range(parts)], jobs)
    rep = _merge(reports)
    rep.seconds = time.perf_counter() - t0
    return rep


def reclassify(spec: TheoremSpec, graph6: str, strict: bool | None = None) -> dict:
    """Classification of a single witness, as used when rechecking reports."""
    g = from_graph6(graph6)
    clf = _Classifier(spec, strict)
    if not clf.in_universe(g):
        return {"in_universe": False}
    out = clf.classify(g)
    out["in_universe"] = True
    return out


# ---------------------------------------------------------------------------
# exception families

def certify_exception_families(m: int, k: int = 1) -> dict:
    """C4-freeness and exact radius comparisons for the four named graphs."""
    if m < 3:
        raise ValueError("need m >= 3")
    t0 = time.perf_counter()
    families = []
    ok = True
    for fs in exception_family_specs(m):
        g = make_family(fs)
        rho = spectral.adjacency_spectral_radius(g).value
        entry = {
            "family": fs.kind,
            "graph6": to_graph6(g),
            "n": g.n,
            "m": g.m,
            "c4_free": not contains_c4(g),
            "rho": rho,
        }
        try:
            for label, c in (("vs_m_minus_1", m - 1), ("vs_m", m), ("vs_m_minus_k", m - k)):
                entry[label] = compare_rho_squared_exact(g, c).relation.value
            entry["method"] = "exact"
        except ExactCapExceeded:
            entry["method"] = "float"
            for label, c in (("vs_m_minus_1", m - 1), ("vs_m", m), ("vs_m_minus_k", m - k)):
                gap = rho * rho - c
                entry[label] = "Equal?" if abs(gap) < BOUNDARY_MARGIN else ("Greater" if gap > 0 else "Less")
            entry["margin_vs_m"] = rho * rho - m
        checks = [entry["c4_free"], entry["vs_m_minus_1"] in ("Greater", "Equal")]
        if fs.kind != "star" and m >= 27:
            checks.append(entry["vs_m"] == "Less")
        entry["ok"] = all(checks)
        ok &= entry["ok"]
        families.append(entry)
    return {"m": m, "k": k, "families": families, "ok": ok, "seconds": round(time.perf_counter() - t0, 4)}


# ---------------------------------------------------------------------------
# structural claims on real graphs

@dataclass
class ClaimReport:
    c4_free: bool
    hub: int
    rho: float
    b_vertices_with_two_a_neighbours: list[int]
    a_internal_max_degree: int
    b_sees_one_a: bool | None
    a_degree_ok: bool | None
    b1_ratio_worst: float | None  # None when B1 is empty
    b1_perron_bound: bool | None
    hub_identity_residual: float
    adjacency_residual: float
    signless_residual: float
    contrapositive_consistent: bool

    @property
    def ok(self) -> bool:
        return (
            self.b_sees_one_a is not False
            and self.a_degree_ok is not False
            and self.b1_perron_bound is not False
            and self.contrapositive_consistent
        )


def check_structural_claims(g: Graph, tol: float = spectral.DEFAULT_TOL) -> ClaimReport:
    """Neighbourhood-partition claims and eigen-identities for a connected graph.

    The hub is the vertex with the largest Perron coordinate.  The degree
    claims (no vertex outside N[hub] sees two vertices of N(hub); N(hub)
    induces a graph of maximum degree <= 1) and the bound x_u <= x_hub / rho on
    B1 are asserted only for C4-free graphs; on other graphs they are
    reported, and any B-vertex with two neighbours in A must come with a C4.
    """
    if g.n == 0 or not is_connected(g):
        raise MissingVectorError("structural claims need a connected graph")
    solve_tol = max(tol / 100, 1e-13)
    r = spectral.adjacency_spectral_radius(g, tol=solve_tol)
    q = spectral.signless_laplacian_spectral_radius(g, tol=solve_tol)
    x = r.vector
    hub = r.hub
    part = neighborhood_partition(g, hub)
    a_mask = g.rows[hub]
    free = not contains_c4(g)
    heavy = sorted(u for u in part.b_set if (g.rows[u] & a_mask).bit_count() >= 2)
    a_deg = max(((g.rows[u] & a_mask).bit_count() for u in part.a_set), default=0)
    rho = r.value
    worst = max((float(x[u] - x[hub] / rho) for u in part.b1_set), default=None)
    # rho^2 x_hub = |A| x_hub + sum_{uv in E(A)} (x_u + x_v) + sum_{u in B} d_A(u) x_u
    rhs = len(part.a_set) * x[hub]
    for u in part.a_set:
        for v in iter_bits(g.rows[u] & a_mask):
            if u < v:
                rhs += x[u] + x[v]
    for u in part.b_set:
        rhs += (g.rows[u] & a_mask).bit_count() * x[u]
    return ClaimReport(
        c4_free=free,
        hub=hub,
        rho=rho,
        b_vertices_with_two_a_neighbours=heavy,
        a_internal_max_degree=a_deg,
        b_sees_one_a=(not heavy) if free else None,
        a_degree_ok=(a_deg <= 1) if free else None,
        b1_ratio_worst=worst,
        b1_perron_bound=(worst is None or worst <= tol) if free else None,
        hub_identity_residual=float(abs(rho * rho * x[hub] - rhs)),
        adjacency_residual=spectral.verify_eigen_identities(g, r),
        signless_residual=spectral.verify_eigen_identities(g, q),
        contrapositive_consistent=(not heavy and a_deg <= 1) or not free,
    )


@dataclass
class WReport:
    w: list[int]
    hub: int
    hub_degree: int
    q: float
    target_degree: int
    hypothesis: bool | None
    at_threshold: bool
    asserted: bool
    holds: bool | None

    @property
    def size(self) -> int:
        return len(self.w)


def check_w_claims(g: Graph, k: int = 0, tol: float = spectral.DEFAULT_TOL) -> WReport:
    """W-set of the signless Perron vector, with |W| = 1 asserted where it applies.

    The assertion fires only when q(G) >= m-k+1 and m reaches the size bound
    of the signless theorem; the hub degree is reported against m-k-1 but
    never asserted, since that equality concerns a hypothetical extremal
    counterexample.
    """
    if g.n == 0 or not is_connected(g):
        raise MissingVectorError("W-set needs a connected graph")
    r = spectral.signless_laplacian_spectral_radius(g, tol=tol)
    w = sorted(spectral.w_set(g, r))
    hub = r.hub
    d = decide(g, SIGNLESS, Threshold.integer(g.m - k + 1))
    hyp = None if d.relation is None else d.relation in (Relation.GREATER, Relation.EQUAL)
    at_thr = g.m >= theorem_threshold("T1_6", k)
    asserted = bool(hyp) and at_thr
    return WReport(
        w=w,
        hub=hub,
        hub_degree=g.degree(hub),
        q=r.value,
        target_degree=g.m - k - 1,
        hypothesis=hyp,
        at_threshold=at_thr,
        asserted=asserted,
        holds=(len(w) == 1) if asserted else None,
    )


def reiman_check(g: Graph) -> bool | None:
    """``m <= n (1 + sqrt(4n - 3)) / 4`` for C4-free graphs; None if G has a C4."""
    if contains_c4(g):
        return None
    n, m = g.n, g.m
    lhs = 4 * m - n
    if lhs <= 0:
        return True
    return lhs * lhs <= n * n * (4 * n - 3)


# ---------------------------------------------------------------------------
# conjecture search

@dataclass
class ConjectureReport:
    n: int
    s: int
    threshold: float
    scanned: int = 0
    c4_free: int = 0
    counterexamples: list[str] = field(default_factory=list)
    boundary_undecided: list[str] = field(default_factory=list)
    extremal_value: float | None = None
    extremal_witnesses: list[str] = field(default_factory=list)
    c4_free_extremal_value: float | None = None
    c4_free_extremal_witnesses: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["timing"] = {"seconds": round(d.pop("seconds"), 3)}
        return d


class _Extremal:
    """Running maximum of rho with exactly-confirmed ties."""

    def __init__(self):
        self.value = None
        self.graphs: list[Graph] = []

    def offer(self, g: Graph, rho: float):
        if self.value is None or rho > self.value + 1e-9:
            self.value, self.graphs = rho, [g]
            return
        if rho < self.value - 1e-9:
            return
        rel = compare_graph_radii_exact(g, self.graphs[0]).relation
        if rel is Relation.EQUAL:
            self.graphs.append(g)
        elif rel is Relation.GREATER:
            self.value, self.graphs = rho, [g]

    def merge(self, other: "_Extremal"):
        for g in other.graphs:
            self.offer(g, other.value)


def _conjecture_thr(n: int, s: int) -> Threshold:
    return Threshold.from_poly((1, -1, -(n - s)), f"(1+sqrt(4({n}-{s})+1))/2")


def _scan_conjecture(args):
    s, n, part, parts, cap = args
    thr = _conjecture_thr(n, s)
    scanned = free = 0
    counter: list[str] = []
    undecided: list[str] = []
    best_free, best_both = _Extremal(), _Extremal()
    for g in enumerate_graphs_by_vertices(n, part=part, parts=parts, cap=cap):
        scanned += 1
        if contains_c4(g):
            continue
        free += 1
        rho = spectral.adjacency_spectral_radius(g).value
        star_free = max_degree(g) < n - s
        best_free.offer(g, rho)
        if star_free:
            best_both.offer(g, rho)
            d = decide(g, ADJACENCY, thr)
            if d.relation is None:
                undecided.append(_canon6(g))
            elif d.relation is not Relation.LESS:
                counter.append(_canon6(g))
    return scanned, free, counter, undecided, best_free, best_both


def search_conjecture(s: int, n: int, jobs: int = 1, cap: int | None = None) -> ConjectureReport:
    """Scan all graphs of order ``n`` for C4-free, K_{1,n-s}-free graphs above the threshold."""
    if s < 1 or n - s < 2:
        raise ValueError("need s >= 1 and n - s >= 2")
    limit = caps()[1] if cap is None else cap
    if n > limit:
        raise CapExceeded(f"n={n} exceeds vertex cap {limit}")
    t0 = time.perf_counter()
    parts = max(1, jobs)
    results = _pool_map(_scan_conjecture, [(s, n, i, parts, limit) for i in range(parts)], jobs)
    rep = ConjectureReport(n=n, s=s, threshold=_conjecture_thr(n, s).value)
    best_free, best_both = _Extremal(), _Extremal()
    for scanned, free, counter, undecided, bf, bb in results:
        rep.scanned += scanned
        rep.c4_free += free
        rep.counterexamples += counter
        rep.boundary_undecided += undecided
        best_free.merge(bf)
        best_both.merge(bb)
    rep.counterexamples.sort()
    rep.boundary_undecided.sort()
    rep.c4_free_extremal_value = best_free.value
    rep.c4_free_extremal_witnesses = sorted(_canon6(g) for g in best_free.graphs)
    rep.extremal_value = best_both.value
    rep.extremal_witnesses = sorted(_canon6(g) for g in best_both.graphs)
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# local search beyond enumeration range

@dataclass
class SearchResult:
    graph: Graph
    spectral: spectral.SpectralResult
    restart: int
    evaluations: int


def _allowed(g: Graph, forbid_c4: bool, forbid_star: int | None) -> bool:
    if forbid_star is not None and max_degree(g) >= forbid_star:
        return False
    return not (forbid_c4 and contains_c4(g))


def _quick_rho(g: Graph):
    # search objective only; the returned graph is re-solved with the certified solver
    vals, vecs = np.linalg.eigh(g.adjacency_matrix())
    return float(vals[-1]), np.abs(vecs[:, -1])


def _guided_rotation(g: Graph, x, rng: random.Random) -> Graph | None:
    """Rotate an edge at a random vertex towards the heaviest non-neighbour.

    To first order the move changes rho by 2 x_keep (x_new - x_old), so the
    lightest neighbour is dropped for the heaviest available vertex.
    """
    keep = rng.choice([v for v in range(g.n) if g.rows[v]])
    nbrs = list(iter_bits(g.rows[keep]))
    others = [w for w in range(g.n) if w != keep and not g.rows[keep] >> w & 1]
    if not others:
        return None
    move = min(nbrs, key=lambda v: (x[v], v))
    w = max(others, key=lambda v: (x[v], -v))
    if x[w] <= x[move]:
        return None
    new = list(g.rows)
    new[keep] &= ~(1 << move)
    new[move] &= ~(1 << keep)
    new[keep] |= 1 << w
    new[w] |= 1 << keep
    return Graph(g.n, new, check=False)


# initial temperature of the annealed acceptance rule, cooled linearly to 0
ANNEAL_T0 = 0.1


def _climb(args):
    m, forbid_c4, forbid_star, iters, seed, restart, n_vertices = args
    rng = random.Random(f"{seed}:{restart}")
    for _ in range(1000):
        cur = random_tree(n_vertices, rng) if n_vertices == m + 1 else random_graph(n_vertices, m, rng)
        if _allowed(cur, forbid_c4, forbid_star):
            break
    else:
        raise GraphError("could not find a feasible starting graph")
    cur_val, cur_vec = _quick_rho(cur)
    best, best_val = cur, cur_val
    evals = 1
    for step in range(iters):
        cand = _guided_rotation(cur, cur_vec, rng) if rng.random() < 0.5 else None
        if cand is None or not _allowed(cand, forbid_c4, forbid_star):
            try:
                cand = mutate_edge_rotation(cur, rng)
            except GraphError:
                break
            if not _allowed(cand, forbid_c4, forbid_star):
                continue
        val, vec = _quick_rho(cand)
        evals += 1
        temp = ANNEAL_T0 * (1 - step / iters)
        if val >= cur_val or (temp > 0 and rng.random() < math.exp((val - cur_val) / temp)):
            cur, cur_val, cur_vec = cand, val, vec
            if val > best_val:
                best, best_val = cand, val
    return best_val, restart, to_graph6(best), evals


def local_search_max_rho(
    m: int,
    forbid_c4: bool = True,
    forbid_star: int | None = None,
    iters: int = 400,
    restarts: int = 32,
    seed: int = 0,
    n_vertices: int | None = None,
    jobs: int = 1,
) -> SearchResult:
    """Hill climbing over edge rotations, maximising rho under the exclusions."""
    n_vertices = m + 1 if n_vertices is None else n_vertices
    if m < 1 or m > n_vertices * (n_vertices - 1) // 2 or restarts < 1:
        raise GraphError(f"infeasible parameters m={m}, n={n_vertices}, restarts={restarts}")
    if forbid_star is not None and forbid_star < 2:
        raise GraphError("forbidding K_{1,1} leaves no graph with edges")
    tasks = [(m, forbid_c4, forbid_star, iters, seed, r, n_vertices) for r in range(restarts)]
    results = _pool_map(_climb, tasks, jobs)
    evals = sum(r[3] for r in results)
    best_val, restart, g6, _ = max(results, key=lambda r: (r[0], -r[1]))
    g = from_graph6(g6)
    assert _allowed(g, forbid_c4, forbid_star)
    return SearchResult(g, spectral.adjacency_spectral_radius(g), restart, evals)
