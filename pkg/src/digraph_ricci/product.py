"""The (alpha, beta)-weighted Cartesian product and checks of its formulas."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .curvature import mean_curvatures, ricci
from .digraph import WeightedDigraph, distances
from .errors import DomainError
from .exactnum import as_rational
from .markov import build_markov, matvec


@dataclass(frozen=True)
class ProductSpec:
    g: WeightedDigraph
    h: WeightedDigraph
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = as_rational(self.alpha), as_rational(self.beta)
        if a <= 0 or b <= 0:
            raise DomainError("alpha and beta must be positive")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def shares(self) -> tuple[Fraction, Fraction]:
        """Weights ``beta/(alpha+beta)`` and ``alpha/(alpha+beta)`` of the two factors."""
        s = self.alpha + self.beta
        return self.beta / s, self.alpha / s

    def index(self, x: int, xp: int) -> int:
        return x * self.h.n + xp

    def split(self, i: int) -> tuple[int, int]:
        return divmod(i, self.h.n)


@lru_cache(maxsize=32)
def cartesian_product(spec: ProductSpec) -> WeightedDigraph:
    g, h = spec.g, spec.h
    n, m = g.n, h.n
    N = n * m
    mu = [[Fraction(0)] * N for _ in range(N)]
    for x in range(n):
        wx = g.vertex_weight(x)
        for xp in range(m):
            i = spec.index(x, xp)
            wxp = h.vertex_weight(xp)
            for y in g.out_neighbors(x):
                mu[i][spec.index(y, xp)] = spec.beta * wxp * g.mu[x][y]
            for yp in h.out_neighbors(xp):
                mu[i][spec.index(x, yp)] = spec.alpha * wx * h.mu[xp][yp]
    labels = tuple(f"({a},{b})" for a in g.labels for b in h.labels)
    return WeightedDigraph(tuple(map(tuple, mu)), labels)


@dataclass
class IdentityReport:
    """Outcome of a batch of exact identity checks; ``failure`` names the first miss."""

    checked: int = 0
    failure: tuple[str, object, object] | None = None
    names: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.failure is None

    def expect(self, name: str, lhs, rhs) -> None:
        if name not in self.names:
            self.names.append(name)
        self.checked += 1
        if self.failure is None and lhs != rhs:
            self.failure = (name, lhs, rhs)


def _mix(bx, ax, same_second: bool, same_first: bool, a, b):
    return (bx * a if same_second else 0) + (ax * b if same_first else 0)


def check_product_identities(spec: ProductSpec, n_functions: int = 10, seed: int = 0) -> IdentityReport:
    G = cartesian_product(spec)
    g, h = spec.g, spec.h
    md, mg, mh = build_markov(G), build_markov(g), build_markov(h)
    wb, wa = spec.shares
    rep = IdentityReport()
    idx = [(x, xp) for x in range(g.n) for xp in range(h.n)]

    for i, (x, xp) in enumerate(idx):
        rep.expect(
            "vertex weight", G.vertex_weight(i), (spec.alpha + spec.beta) * g.vertex_weight(x) * h.vertex_weight(xp)
        )
        rep.expect("perron", md.m[i], mg.m[x] * mh.m[xp])
        for j, (y, yp) in enumerate(idx):
            for name, big, small, small_p in (
                ("transition", md.P, mg.P, mh.P),
                ("reverse transition", md.Prev, mg.Prev, mh.Prev),
                ("mean transition", md.Pmean, mg.Pmean, mh.Pmean),
            ):
                rep.expect(name, big[i][j], _mix(wb, wa, xp == yp, x == y, small[x][y], small_p[xp][yp]))

    rng = random.Random(seed)
    for _ in range(n_functions):
        f = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(g.n)]
        fp = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(h.n)]
        F = [f[x] + fp[xp] for x, xp in idx]
        LF = [a - b for a, b in zip(F, matvec(md.Pmean, F))]
        Lf = [a - b for a, b in zip(f, matvec(mg.Pmean, f))]
        Lfp = [a - b for a, b in zip(fp, matvec(mh.Pmean, fp))]
        for i, (x, xp) in enumerate(idx):
            rep.expect("laplacian", LF[i], wb * Lf[x] + wa * Lfp[xp])

    H, Hg, Hh = mean_curvatures(G, md), mean_curvatures(g, mg), mean_curvatures(h, mh)
    for i, (x, xp) in enumerate(idx):
        rep.expect("mean curvature", H.H[i], wb * Hg.H[x] + wa * Hh.H[xp])
        rep.expect("reverse mean curvature", H.Hrev[i], wb * Hg.Hrev[x] + wa * Hh.Hrev[xp])
        for j, (y, yp) in enumerate(idx):
            rep.expect("mixed mean curvature", H.Hmix[i][j], wb * Hg.Hmix[x][y] + wa * Hh.Hmix[xp][yp])
    return rep


@dataclass(frozen=True)
class ProductCurvatureCheck:
    pair: tuple[int, int]
    direct: Fraction
    predicted: Fraction
    case: str

    @property
    def holds(self) -> bool:
        return self.direct == self.predicted


def predicted_product_curvature(spec: ProductSpec, X: int, Y: int) -> tuple[Fraction, str]:
    """Right-hand side assembled from the factors' own curvatures."""
    (x, xp), (y, yp) = spec.split(X), spec.split(Y)
    wb, wa = spec.shares
    if x != y and xp != yp:
        d, dp = distances(spec.g).d[x][y], distances(spec.h).d[xp][yp]
        k = ricci(spec.g, None, x, y)[0]
        kp = ricci(spec.h, None, xp, yp)[0]
        return wb * Fraction(d, d + dp) * k + wa * Fraction(dp, d + dp) * kp, "both"
    if x != y:
        return wb * ricci(spec.g, None, x, y)[0], "first"
    if xp != yp:
        return wa * ricci(spec.h, None, xp, yp)[0], "second"
    raise DomainError("product curvature needs two distinct vertices")


def check_product_curvature(spec: ProductSpec, X: int, Y: int) -> ProductCurvatureCheck:
    predicted, case = predicted_product_curvature(spec, X, Y)
    G = cartesian_product(spec)
    direct = ricci(G, None, X, Y)[0]
    return ProductCurvatureCheck((X, Y), direct, predicted, case)
