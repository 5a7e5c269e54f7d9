"""Exact comparisons of leading eigenvalues against algebraic thresholds.

Polynomials are coefficient lists, highest degree first.  The characteristic
polynomial is computed over the integers; root counting uses Sturm sequences
over the rationals, so every decision here is free of rounding.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import Graph, iter_bits

DEFAULT_EXACT_CAP = 40


class ExactCapExceeded(RuntimeError):
    """The graph is too large for the exact path."""


class Relation(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


@dataclass(frozen=True)
class ExactOrdering:
    relation: Relation
    certificate: dict = field(default_factory=dict, compare=False)


def exact_cap() -> int:
    return int(os.environ.get("SPECTRAL_TURAN_EXACT_CAP", DEFAULT_EXACT_CAP))


# ---------------------------------------------------------------------------
# characteristic polynomial

def charpoly(n: int, diag: Sequence[int], nbrs: Sequence[Sequence[int]]) -> list[int]:
    """det(xI - M) for M = diag(d) + A, A given by neighbour lists.

    Faddeev-LeVerrier recursion in exact integer arithmetic: with M_0 = 0 and
    c_0 = 1, M_k = M M_{k-1} + c_{k-1} I and c_k = -tr(M M_k) / k, where the
    division is exact.  The 0/1 off-diagonal structure keeps each product
    O(n * m).
    """
    coeffs = [1]
    if n == 0:
        return coeffs
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        # M_k = M @ M_{k-1} + c_{k-1} I
        new = []
        for i in range(n):
            di = diag[i]
            row = [di * x for x in mk[i]] if di else [0] * n
            for l in nbrs[i]:
                ml = mk[l]
                for j in range(n):
                    row[j] += ml[j]
            row[i] += c_prev
            new.append(row)
        mk = new
        tr = 0
        for i in range(n):
            s = diag[i] * mk[i][i]
            for l in nbrs[i]:
                s += mk[l][i]
            tr += s
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier coefficient")
        coeffs.append(-tr // k)
    return coeffs


def adjacency_charpoly(g: Graph) -> list[int]:
    nbrs = [list(iter_bits(r)) for r in g.rows]
    return charpoly(g.n, [0] * g.n, nbrs)


def signless_charpoly(g: Graph) -> list[int]:
    nbrs = [list(iter_bits(r)) for r in g.rows]
    return charpoly(g.n, [len(x) for x in nbrs], nbrs)


# ---------------------------------------------------------------------------
# rational polynomial arithmetic

def _strip(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _as_q(p) -> list[Fraction]:
    return _strip([Fraction(c) for c in p])


def evaluate(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def derivative(p):
    d = len(p) - 1
    if d <= 0:
        return [Fraction(0)]
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def divmod_poly(a, b):
    a = list(a)
    b = _strip(b)
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], _strip(a)
    q = []
    lead = b[0]
    for i in range(len(a) - len(b) + 1):
        coef = a[i] / lead
        q.append(coef)
        if coef:
            for j in range(1, len(b)):
                a[i + j] -= coef * b[j]
        a[i] = Fraction(0)
    r = _strip(a[len(a) - len(b) + 1:] or [Fraction(0)])
    return q, r


def gcd_poly(a, b):
    a, b = _as_q(a), _as_q(b)
    while b != [0]:
        _, r = divmod_poly(a, b)
        a, b = b, r
    lead = a[0]
    return [c / lead for c in a] if lead else a


def squarefree(p):
    p = _as_q(p)
    if len(p) <= 2:
        return p
    g = gcd_poly(p, derivative(p))
    if len(g) == 1:
        return p
    q, _ = divmod_poly(p, g)
    return _strip(q)


def sturm_sequence(p) -> list[list[Fraction]]:
    p = squarefree(p)
    seq = [p, derivative(p)]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        _, r = divmod_poly(seq[-2], seq[-1])
        if r == [0]:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s != [0]]


def _variations(values) -> int:
    count = 0
    last = 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def roots_above(seq, a) -> int:
    """Distinct real roots of the sequence's polynomial in (a, +inf).

    ``a`` must not be a root.
    """
    at_a = _variations(evaluate(s, a) for s in seq)
    at_inf = _variations(s[0] for s in seq)
    return at_a - at_inf


def root_bound(p) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    p = _as_q(p)
    lead = abs(p[0])
    return 1 + max((abs(c) / lead for c in p[1:]), default=Fraction(0)) + 1


# ---------------------------------------------------------------------------
# comparison of largest real roots

def _nudge(lo, hi, polys):
    """A rational in (lo, hi) that is not a root of any of ``polys``."""
    mid = (lo + hi) / 2
    step = (hi - lo) / 4
    while any(evaluate(p, mid) == 0 for p in polys):
        mid = lo + step
        step /= 2
    return mid


def compare_largest_roots(p: Sequence, f: Sequence) -> tuple[Relation, dict]:
    """Compare the largest real root of ``p`` with that of ``f``.

    Both polynomials must have a real root.  Returns the relation of
    max-root(p) to max-root(f) together with the isolating data used.
    """
    ps = squarefree(p)
    fs = squarefree(f)
    sp = sturm_sequence(ps)
    sf = sturm_sequence(fs)
    bound = max(root_bound(ps), root_bound(fs))
    lo, hi = -bound, bound
    if roots_above(sf, lo) == 0:
        raise ValueError("threshold polynomial has no real root")
    if roots_above(sp, lo) == 0:
        raise ValueError("polynomial has no real root")
    cert = {"p": [str(c) for c in p], "f": [str(c) for c in f]}

    # isolate the largest root beta of f in (lo, hi]: one root above lo, none above hi
    while roots_above(sf, lo) > 1:
        mid = _nudge(lo, hi, [fs, ps])
        if roots_above(sf, mid) >= 1:
            lo = mid
        else:
            hi = mid

    def finish(rel):
        cert["interval"] = [str(lo), str(hi)]
        cert["p_roots_above_lo"] = roots_above(sp, lo)
        return rel, cert

    g = gcd_poly(ps, fs)
    shared = len(g) > 1 and roots_above(sturm_sequence(g), lo) > 0
    if shared:
        # beta is a root of p; shrink until beta is p's only root in (lo, hi]
        while roots_above(sp, lo) - roots_above(sp, hi) > 1:
            mid = _nudge(lo, hi, [fs, ps])
            if roots_above(sf, mid) >= 1:
                lo = mid
            else:
                hi = mid
        return finish(Relation.GREATER if roots_above(sp, hi) > 0 else Relation.EQUAL)
    # p(beta) != 0: shrink until p has no root in (lo, hi]
    while roots_above(sp, lo) != roots_above(sp, hi):
        mid = _nudge(lo, hi, [fs, ps])
        if roots_above(sf, mid) >= 1:
            lo = mid
        else:
            hi = mid
    return finish(Relation.GREATER if roots_above(sp, hi) > 0 else Relation.LESS)


def _check_cap(g: Graph, cap: int | None):
    cap = exact_cap() if cap is None else cap
    if g.n > cap:
        raise ExactCapExceeded(f"n={g.n} exceeds exact-path cap {cap}")


def compare_rho_squared_exact(g: Graph, c, cap: int | None = None) -> ExactOrdering:
    """Exact sign of rho(G)^2 - c for rational ``c``."""
    _check_cap(g, cap)
    c = Fraction(c)
    p = adjacency_charpoly(g)
    if c < 0:
        return ExactOrdering(Relation.GREATER, {"p": p, "threshold": str(c)})
    rel, cert = compare_largest_roots(p, [c.denominator, 0, -c.numerator])
    cert["threshold"] = str(c)
    return ExactOrdering(rel, cert)


def compare_rho_exact(g: Graph, f: Sequence[int], cap: int | None = None) -> ExactOrdering:
    """Exact ordering of rho(G) against the largest real root of ``f``."""
    _check_cap(g, cap)
    rel, cert = compare_largest_roots(adjacency_charpoly(g), f)
    return ExactOrdering(rel, cert)


def compare_q_exact(g: Graph, t, cap: int | None = None) -> ExactOrdering:
    """Exact sign of q(G) - t for rational ``t``."""
    _check_cap(g, cap)
    t = Fraction(t)
    rel, cert = compare_largest_roots(signless_charpoly(g), [t.denominator, -t.numerator])
    cert["threshold"] = str(t)
    return ExactOrdering(rel, cert)


def compare_graph_radii_exact(g: Graph, h: Graph, cap: int | None = None) -> ExactOrdering:
    """Exact ordering of rho(g) against rho(h)."""
    _check_cap(g, cap)
    _check_cap(h, cap)
    rel, cert = compare_largest_roots(adjacency_charpoly(g), adjacency_charpoly(h))
    return ExactOrdering(rel, cert)
