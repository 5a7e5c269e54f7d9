"""Leading eigenpairs of A(G) and Q(G) = D(G) + A(G).

The solver is a shifted power iteration run separately on every connected
component.  On a component the iterate stays strictly positive, so besides
the residual ``|M x - value x|_inf`` it yields a Collatz-Wielandt bracket
``min_i (Mx)_i / x_i <= lambda_max <= max_i (Mx)_i / x_i``, which certifies
that the value found is the leading eigenvalue and not some other one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import sympy

from .graph import FamilySpec, Graph, components, induced_subgraph, iter_bits

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1_000_000
ADJACENCY = "adjacency"
SIGNLESS = "signless"


class ConvergenceError(RuntimeError):
    pass


class MissingVectorError(ValueError):
    """An eigenvector-based check was asked of a result without a Perron vector."""


@dataclass(frozen=True)
class SpectralResult:
    value: float
    vector: np.ndarray | None
    residual: float
    iterations: int
    lower: float
    upper: float
    matrix: str = ADJACENCY

    @property
    def hub(self) -> int:
        """Vertex carrying the largest Perron coordinate (smallest index on ties)."""
        if self.vector is None:
            raise MissingVectorError("no Perron vector for a disconnected graph")
        return int(np.argmax(self.vector))


def _matrix(g: Graph, which: str) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, r in enumerate(g.rows):
        for v in iter_bits(r):
            a[u, v] = 1.0
    if which == SIGNLESS:
        a[np.diag_indices(g.n)] = a.sum(axis=1)
    elif which != ADJACENCY:
        raise ValueError(f"unknown matrix {which!r}")
    return a


def _power(
    m: np.ndarray,
    shift: float,
    tol: float,
    max_iter: int,
    stop: Callable[[float, float], bool] | None = None,
):
    """Power iteration on ``m + shift I`` for an irreducible nonnegative ``m``.

    Returns ``(value, x, residual, iterations, lower, upper)``.  ``stop`` is
    consulted with the current bracket and may end the run early.
    """
    n = m.shape[0]
    if n == 1:
        v = float(m[0, 0])
        return v, np.ones(1), 0.0, 0, v, v
    b = m + shift * np.eye(n)
    x = np.full(n, 1.0 / math.sqrt(n))
    it = 0
    lam = 0.0
    res = math.inf
    lower, upper = -math.inf, math.inf
    while it < max_iter:
        it += 1
        y = b @ x
        lam = float(x @ y)
        r = y - lam * x
        res = float(np.max(np.abs(r)))
        if res <= tol or (stop is not None and it % 8 == 0):
            ratios = y / x
            lower = max(lower, float(ratios.min()) - shift)
            upper = min(upper, float(ratios.max()) - shift)
            if res <= tol or stop(lower, upper):
                break
        x = y / np.linalg.norm(y)
    else:
        raise ConvergenceError(f"no convergence after {max_iter} iterations (residual {res:.3e})")
    return lam - shift, x, res, it, lower, upper


def _shift(g: Graph, which: str) -> float:
    if which == SIGNLESS:
        # Q is positive semidefinite: its top eigenvalue already dominates.
        return 0.0
    dmax = max((r.bit_count() for r in g.rows), default=0)
    return max(0.5, 0.5 * math.sqrt(dmax))


def leading_eigenpair(
    g: Graph,
    which: str = ADJACENCY,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectralResult:
    if g.n < 1:
        raise ValueError("spectral radius needs n >= 1")
    comps = components(g)
    best = None
    total = 0
    for comp in comps:
        sub = g if len(comps) == 1 else induced_subgraph(g, comp)
        val, x, res, it, lo, hi = _power(_matrix(sub, which), _shift(sub, which), tol, max_iter)
        total += it
        if best is None or val > best[0]:
            best = (val, x, res, lo, hi)
    val, x, res, lo, hi = best
    it = total
    vector = None
    if len(comps) == 1:
        vector = np.abs(x) / np.linalg.norm(x)
    # The bracket is rigorous up to rounding; keep the value inside it.
    lo, hi = min(lo, val), max(hi, val)
    if which == ADJACENCY and g.m:
        assert val >= 2 * g.m / g.n - 1e-9, "average-degree lower bound violated"
    return SpectralResult(val, vector, res, it, lo, hi, which)


def adjacency_spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralResult:
    return leading_eigenpair(g, ADJACENCY, tol, max_iter)


def signless_laplacian_spectral_radius(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    return leading_eigenpair(g, SIGNLESS, tol, max_iter)


def radius_bracket(
    g: Graph,
    which: str,
    stop: Callable[[float, float], bool],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[float, float, float]:
    """Certified ``(lower, value, upper)`` for the leading eigenvalue.

    Iteration on each component ends as soon as ``stop(lower, upper)`` says
    the bracket is informative enough, or the residual reaches ``tol``.
    """
    comps = components(g) if g.n else []
    glo, gval, ghi = -math.inf, -math.inf, -math.inf
    for comp in comps:
        sub = g if len(comps) == 1 else induced_subgraph(g, comp)
        if sub.m == 0:
            lo = val = hi = 0.0
        else:
            val, _, _, _, lo, hi = _power(_matrix(sub, which), _shift(sub, which), tol, max_iter, stop)
        glo, gval, ghi = max(glo, lo), max(gval, val), max(ghi, hi)
    return glo, gval, ghi


# ---------------------------------------------------------------------------
# closed forms

def closed_form_spectral_radius(spec: FamilySpec) -> sympy.Expr:
    """Exact spectral radius for stars and odd friendship graphs."""
    if spec.kind == "star":
        return sympy.sqrt(spec.edge_count)
    if spec.kind == "friendship_odd":
        return (1 + sympy.sqrt(4 * (spec.n - 1) + 1)) / 2
    raise ValueError(f"no closed form for family {spec.kind!r}")


def star_plus_edge_cubic(m: int) -> list[int]:
    """Cubic factor of the characteristic polynomial of K_{1,m-1}+e.

    For m >= 4 the full polynomial is x^(m-4) (x+1) times this cubic; for
    every m >= 3 its largest root is rho(K_{1,m-1}+e).
    """
    return [1, -1, -(m - 1), m - 3]


# ---------------------------------------------------------------------------
# identities checked on computed eigenpairs

def verify_eigen_identities(g: Graph, r: SpectralResult, which: str | None = None) -> float:
    """Largest violation of the eigen-equations satisfied by ``r``.

    Adjacency: ``value * x_u = sum_{v in N(u)} x_v`` for every vertex.
    Signless: ``(value - d(u)) x_u = sum_{v in N(u)} x_v`` for every vertex and
    the Rayleigh form ``value = sum_{uv in E} (x_u + x_v)^2``.
    """
    which = which or r.matrix
    if which != r.matrix:
        raise ValueError(f"result is for {r.matrix}, not {which}")
    if r.vector is None:
        raise MissingVectorError("identities need a Perron vector")
    x = r.vector
    worst = 0.0
    for u, row in enumerate(g.rows):
        s = sum(x[v] for v in iter_bits(row))
        coef = r.value - (row.bit_count() if which == SIGNLESS else 0)
        worst = max(worst, abs(coef * x[u] - s))
    if which == SIGNLESS:
        form = sum((x[u] + x[v]) ** 2 for u, v in g.edges())
        worst = max(worst, abs(r.value - form))
    return float(worst)


def w_set(g: Graph, r: SpectralResult, rel_tol: float = 1e-9) -> frozenset:
    """Vertices whose coordinate is at least half of the largest coordinate.

    Coordinates within ``rel_tol * max`` of the half-way mark count as members,
    since ties (e.g. the leaves of P_3 under Q) are exact in theory.
    """
    if r.vector is None:
        raise MissingVectorError("W needs a Perron vector")
    x = r.vector
    top = float(x.max())
    cut = 0.5 * top - rel_tol * top
    return frozenset(int(u) for u in np.nonzero(x >= cut)[0])
