"""Ricci curvature on directed graphs and the quantities around it.

``ricci`` is the workhorse: a single exact LP per vertex pair over
1-Lipschitz functions, minimizing the Laplacian gradient along the pair.
``ricci_via_limit`` gets the same number the slow way, by shrinking the
idleness parameter of the lazy walks until ``kappa_eps / eps`` stops moving,
and exists mainly so the two can be checked against each other.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .digraph import WeightedDigraph, classify, distances, inscribed_radius, union_neighbors
from .errors import BudgetExceeded, DomainError, NotAnEdge, NotRegular
from .exactnum import EQ, LE, Constraint, LinearProgram, as_rational, solve_lp
from .markov import MarkovData, ProbMeasure, build_markov, kernel_measure, lazy_measure
from .transport import wasserstein_value

ZERO = Fraction(0)
Pair = tuple[int, int]

#: Smallest idleness tried before ``ricci_via_limit`` gives up.
LIMIT_FLOOR_EXPONENT = 20


def _md(g: WeightedDigraph, md: MarkovData | None) -> MarkovData:
    return build_markov(g) if md is None else md


def _check_pair(g: WeightedDigraph, x: int, y: int) -> None:
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise DomainError(f"vertex out of range: ({x}, {y})")
    if x == y:
        raise DomainError("curvature needs two distinct vertices")


@dataclass(frozen=True)
class MeanCurvatures:
    H: tuple[Fraction, ...]
    Hrev: tuple[Fraction, ...]
    Hmix: tuple[tuple[Fraction, ...], ...]


def mean_curvatures(g: WeightedDigraph, md: MarkovData | None = None) -> MeanCurvatures:
    md = _md(g, md)
    d = distances(g).d
    n = g.n
    H = tuple(-sum((md.Pmean[x][y] * d[x][y] for y in range(n)), ZERO) for x in range(n))
    Hrev = tuple(-sum((md.Pmean[x][y] * d[y][x] for y in range(n)), ZERO) for x in range(n))
    Hmix = tuple(tuple(-(H[x] + Hrev[y]) for y in range(n)) for x in range(n))
    return MeanCurvatures(H, Hrev, Hmix)


def kappa_eps(g: WeightedDigraph, md: MarkovData | None, x: int, y: int, eps) -> Fraction:
    """``1 - W(nu_x, nu_y) / d(x, y)`` for the lazy walks with idleness ``1 - eps``."""
    _check_pair(g, x, y)
    md = _md(g, md)
    dm = distances(g)
    w = wasserstein_value(dm, lazy_measure(md, x, eps), lazy_measure(md, y, eps))
    return 1 - w / dm.d[x][y]


def ricci(g: WeightedDigraph, md: MarkovData | None, x: int, y: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact curvature of ``(x, y)`` and a 1-Lipschitz optimizer ``f``.

    Minimizes ``(Lf(y) - Lf(x)) / d(x, y)`` over functions with
    ``f(w) - f(v) <= 1`` along every edge (equivalent to 1-Lipschitz for the
    hop metric), ``f(x) = 0`` and ``f(y) = d(x, y)``.

    Internally the unknowns are ``g(v) = f(v) + d(v, x)``, which are
    nonnegative for any feasible ``f``; ``g(x) = 0`` is dropped.
    """
    _check_pair(g, x, y)
    md = _md(g, md)
    d = distances(g).d
    n = g.n
    P = md.Pmean
    # Lf(y) - Lf(x) = sum_v a[v] f(v)
    a = [(1 if v == y else 0) - P[y][v] - (1 if v == x else 0) + P[x][v] for v in range(n)]
    free = [v for v in range(n) if v != x]
    col = {v: k for k, v in enumerate(free)}
    k = len(free)
    cons = []
    for v, w in g.edges:
        coeffs = [ZERO] * k
        if w in col:
            coeffs[col[w]] += 1
        if v in col:
            coeffs[col[v]] -= 1
        cons.append(Constraint(tuple(coeffs), LE, Fraction(1 + d[w][x] - d[v][x])))
    pin = [ZERO] * k
    pin[col[y]] = Fraction(1)
    cons.append(Constraint(tuple(pin), EQ, Fraction(d[x][y] + d[y][x])))
    res = solve_lp(LinearProgram(tuple(Fraction(a[v]) for v in free), tuple(cons)))
    f = [ZERO] * n
    for v in free:
        f[v] = res.witness[col[v]] - d[v][x]
    value = sum((a[v] * f[v] for v in range(n)), ZERO)
    return value / d[x][y], tuple(f)


def _stabilize(evaluate) -> Fraction:
    # A concave function vanishing at 0 that meets its chord at the midpoint
    # is linear on the whole interval, so one repeat settles the limit.
    prev = None
    for k in range(1, LIMIT_FLOOR_EXPONENT + 1):
        eps = Fraction(1, 2**k)
        cur = evaluate(eps) / eps
        if cur == prev:
            return cur
        prev = cur
    raise BudgetExceeded(f"kappa_eps/eps did not settle by eps = 2^-{LIMIT_FLOOR_EXPONENT}")


def ricci_via_limit(g: WeightedDigraph, md: MarkovData | None, x: int, y: int) -> Fraction:
    _check_pair(g, x, y)
    md = _md(g, md)
    return _stabilize(lambda eps: kappa_eps(g, md, x, y, eps))


@dataclass
class CurvatureReport:
    scope: str
    kappa: dict[Pair, Fraction]
    edge_min: Fraction
    global_min: Fraction
    witnesses: dict[Pair, tuple[Fraction, ...]] = field(repr=False)


def _pairs(g: WeightedDigraph, scope: str) -> list[Pair]:
    if scope == "edges":
        return g.edges
    if scope == "all":
        return [(x, y) for x in range(g.n) for y in range(g.n) if x != y]
    raise DomainError(f"scope must be 'edges' or 'all', got {scope!r}")


def curvature_map(
    g: WeightedDigraph, pairs: Iterable[Pair], md: MarkovData | None = None, n_jobs: int = 1
) -> dict[Pair, tuple[Fraction, tuple[Fraction, ...]]]:
    """``ricci`` on each pair, optionally on a thread pool; order follows ``pairs``."""
    md = _md(g, md)
    pairs = list(pairs)
    if n_jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(lambda p: ricci(g, md, *p), pairs))
    else:
        results = [ricci(g, md, x, y) for x, y in pairs]
    return dict(zip(pairs, results))


def curvature_report(
    g: WeightedDigraph, scope: str = "edges", md: MarkovData | None = None, n_jobs: int = 1
) -> CurvatureReport:
    """Curvature on every edge, or on every ordered pair with ``scope='all'``.

    With the edge scope, ``global_min`` equals ``edge_min``: every pair's
    curvature is bounded below by the smallest edge curvature, and edges are
    themselves pairs.
    """
    got = curvature_map(g, _pairs(g, scope), md, n_jobs)
    kappa = {p: v[0] for p, v in got.items()}
    edge_min = min(kappa[e] for e in g.edges)
    return CurvatureReport(
        scope=scope,
        kappa=kappa,
        edge_min=edge_min,
        global_min=min(kappa.values()),
        witnesses={p: v[1] for p, v in got.items()},
    )


def lower_bound_general(g: WeightedDigraph, md: MarkovData | None, x: int, y: int) -> Fraction:
    _check_pair(g, x, y)
    md = _md(g, md)
    dm = distances(g)
    dxy, dyx = dm.d[x][y], dm.d[y][x]
    D = max(dxy, dyx)
    p = md.Pmean[x][y] + md.Pmean[y][x]
    Hyx = mean_curvatures(g, md).Hmix[y][x]
    return (
        -Fraction(2 * D, dxy) * max(1 - p, ZERO)
        + (dxy + D - Hyx) / dxy
        - Fraction(D - dyx, dxy) * p
    )


def _require_edge(g: WeightedDigraph, edge: Pair) -> Pair:
    x, y = edge
    if not (0 <= x < g.n and 0 <= y < g.n) or not g.has_edge(x, y):
        raise NotAnEdge(f"({x}, {y}) is not an edge")
    return x, y


def lower_bound_edge(g: WeightedDigraph, md: MarkovData | None, edge: Pair) -> Fraction:
    x, y = _require_edge(g, edge)
    md = _md(g, md)
    dyx = distances(g).d[y][x]
    p = md.Pmean[x][y] + md.Pmean[y][x]
    Hyx = mean_curvatures(g, md).Hmix[y][x]
    return -2 * dyx * max(1 - p, ZERO) + (1 + dyx - Hyx)


def lower_bound_regular(g: WeightedDigraph, md: MarkovData | None, edge: Pair) -> Fraction:
    x, y = _require_edge(g, edge)
    r = classify(g).regular
    if r is None:
        raise NotRegular("graph is not an unweighted regular graph")
    outside = set(g.out_neighbors(x)) - set(g.in_neighbors(y))
    return Fraction(1 - r, 2 * r) - sum((Fraction(inscribed_radius(g, z), 2 * r) for z in outside), ZERO)


@dataclass(frozen=True)
class UpperBound:
    bound: Fraction
    simple: Fraction


def upper_bound(g: WeightedDigraph, md: MarkovData | None, edge: Pair) -> UpperBound:
    x, y = _require_edge(g, edge)
    md = _md(g, md)
    P = md.Pmean
    common = union_neighbors(g, x) & union_neighbors(g, y)
    sx = sum((P[x][z] for z in common), ZERO)
    sy = sum((P[y][z] for z in common), ZERO)
    return UpperBound(bound=P[x][y] + P[y][x] + min(sx, sy), simple=1 + P[y][x])


VARIANT_KINDS = ("out-out", "in-out", "out-in", "in-in")


def outer_kernel(g: WeightedDigraph) -> tuple[tuple[Fraction, ...], ...]:
    return build_markov(g).P


def inner_kernel(g: WeightedDigraph) -> tuple[tuple[Fraction, ...], ...]:
    """Row ``x`` spreads mass over in-neighbors in proportion to incoming weight."""
    n = g.n
    rows = []
    for x in range(n):
        total = sum((g.mu[y][x] for y in range(n)), ZERO)
        rows.append(tuple(g.mu[z][x] / total for z in range(n)))
    return tuple(rows)


def variant_curvature(g: WeightedDigraph, x: int, y: int, kind: str) -> Fraction:
    """Curvature with outer or inner walks in place of the mean one.

    ``kind`` is ``"<a>-<b>"``; the walk from ``x`` uses kernel ``a`` and the
    walk from ``y`` uses kernel ``b``.
    """
    _check_pair(g, x, y)
    if kind not in VARIANT_KINDS:
        raise DomainError(f"kind must be one of {VARIANT_KINDS}")
    pick = {"out": outer_kernel(g), "in": inner_kernel(g)}
    kx, ky = (pick[s] for s in kind.split("-"))
    dm = distances(g)
    dxy = dm.d[x][y]

    def evaluate(eps: Fraction) -> Fraction:
        w = wasserstein_value(dm, kernel_measure(kx, x, eps), kernel_measure(ky, y, eps))
        return 1 - w / dxy

    return _stabilize(evaluate)
