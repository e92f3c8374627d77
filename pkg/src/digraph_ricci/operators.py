"""Chung Laplacian, carré du champ operators and curvature-dimension checks.

Functions here accept either a :class:`MarkovData` or a graph (from which
one is built).  Neighborhoods are read off the support of the mean kernel,
so no graph object is needed once the kernel exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .digraph import WeightedDigraph
from .errors import DomainError
from .exactnum import as_rational
from .markov import MarkovData, build_markov, matvec

ZERO = Fraction(0)
Vector = tuple[Fraction, ...]


def _as_md(obj) -> MarkovData:
    if isinstance(obj, MarkovData):
        return obj
    if isinstance(obj, WeightedDigraph):
        return build_markov(obj)
    raise DomainError(f"expected MarkovData or WeightedDigraph, got {type(obj).__name__}")


def _vec(f: Sequence) -> Vector:
    return tuple(as_rational(v) for v in f)


def _nbrs(md: MarkovData, x: int) -> list[int]:
    return [y for y, p in enumerate(md.Pmean[x]) if p]


@dataclass(frozen=True)
class LaplacianData:
    L: tuple[tuple[Fraction, ...], ...]
    innerweights: Vector

    def inner(self, f0: Sequence, f1: Sequence) -> Fraction:
        return sum((a * b * w for a, b, w in zip(_vec(f0), _vec(f1), self.innerweights)), ZERO)


def laplacian_data(md) -> LaplacianData:
    md = _as_md(md)
    n = md.n
    L = tuple(tuple((1 if i == j else 0) - md.Pmean[i][j] for j in range(n)) for i in range(n))
    return LaplacianData(L, md.m)


def apply_laplacian(ld: LaplacianData, f: Sequence) -> Vector:
    return matvec(ld.L, _vec(f))


def delta(md, f: Sequence) -> Vector:
    """Negative Laplacian ``Δf(x) = Σ_y P(x,y)(f(y) - f(x))``."""
    md = _as_md(md)
    f = _vec(f)
    return tuple(pf - fx for pf, fx in zip(matvec(md.Pmean, f), f))


def apply_p_laplacian(md, f: Sequence, p) -> tuple:
    """``Σ_y |f(x)-f(y)|^(p-2) (f(x)-f(y)) P(x,y)``.

    Integer ``p >= 2`` stays exact.  Any other ``p`` is evaluated in floating
    point and a float tuple comes back.
    """
    md = _as_md(md)
    if isinstance(p, float):
        exact = p.is_integer() and p >= 2
        p_exact = int(p) if exact else None
    else:
        pq = as_rational(p)
        exact = pq.denominator == 1 and pq >= 2
        p_exact = int(pq) if exact else None
    if float(p) <= 1:
        raise DomainError(f"p must exceed 1, got {p}")
    n = md.n
    if exact:
        f = _vec(f)
        out = []
        for x in range(n):
            s = ZERO
            for y in _nbrs(md, x):
                t = f[x] - f[y]
                s += abs(t) ** (p_exact - 2) * t * md.Pmean[x][y]
            out.append(s)
        return tuple(out)
    fv = np.array([float(v) for v in f])
    P = np.array([[float(v) for v in row] for row in md.Pmean])
    t = fv[:, None] - fv[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        mag = np.where(t == 0, 0.0, np.abs(t) ** (float(p) - 2))
    return tuple(float(v) for v in (mag * t * P).sum(axis=1))


def integration_by_parts_check(ld_or_md, omega, f0: Sequence, f1: Sequence) -> tuple[Fraction, Fraction]:
    """Both sides of the summation-by-parts identity on the vertex subset ``omega``."""
    md = _as_md(ld_or_md) if not isinstance(ld_or_md, LaplacianData) else None
    ld = ld_or_md if isinstance(ld_or_md, LaplacianData) else laplacian_data(md)
    omega = sorted(set(omega))
    if not omega:
        raise DomainError("omega must be nonempty")
    f0, f1 = _vec(f0), _vec(f1)
    n = len(f0)
    m = ld.innerweights
    # m_xy = m(x) P(x,y) = -m(x) L(x,y) off the diagonal
    mxy = [[-m[x] * ld.L[x][y] if x != y else ZERO for y in range(n)] for x in range(n)]
    Lf0 = apply_laplacian(ld, f0)
    lhs = sum((Lf0[x] * f1[x] * m[x] for x in omega), ZERO)
    inside = set(omega)
    rhs = sum(((f0[y] - f0[x]) * (f1[y] - f1[x]) * mxy[x][y] for x in omega for y in omega), ZERO) / 2
    rhs -= sum(((f0[y] - f0[x]) * f1[x] * mxy[x][y] for x in omega for y in range(n) if y not in inside), ZERO)
    return lhs, rhs


def _mul(a: Vector, b: Vector) -> Vector:
    return tuple(u * v for u, v in zip(a, b))


def gamma(md, f0: Sequence, f1: Sequence) -> Vector:
    md = _as_md(md)
    f0, f1 = _vec(f0), _vec(f1)
    d01, d0, d1 = delta(md, _mul(f0, f1)), delta(md, f0), delta(md, f1)
    return tuple((a - u * b - v * c) / 2 for a, u, b, v, c in zip(d01, f0, d1, f1, d0))


def gamma2(md, f0: Sequence, f1: Sequence) -> Vector:
    md = _as_md(md)
    f0, f1 = _vec(f0), _vec(f1)
    g01 = gamma(md, f0, f1)
    a = delta(md, g01)
    b = gamma(md, f0, delta(md, f1))
    c = gamma(md, f1, delta(md, f0))
    return tuple((u - v - w) / 2 for u, v, w in zip(a, b, c))


def gcal(md, f: Sequence) -> Vector:
    md = _as_md(md)
    f = _vec(f)
    P = md.Pmean
    out = []
    for x in range(md.n):
        s = ZERO
        for y in _nbrs(md, x):
            for z in _nbrs(md, y):
                s += (f[x] - 2 * f[y] + f[z]) ** 2 * P[x][y] * P[y][z]
        out.append(s / 4)
    return tuple(out)


# Closed forms.  In the two-sum products the inner sum over z depends on the
# outer y, so each is a single double sum over (y, z).

def gamma_closed(md, f: Sequence) -> Vector:
    md = _as_md(md)
    f = _vec(f)
    return tuple(
        sum(((f[x] - f[y]) ** 2 * md.Pmean[x][y] for y in _nbrs(md, x)), ZERO) / 2 for x in range(md.n)
    )


def delta_gamma_closed(md, f: Sequence) -> Vector:
    md = _as_md(md)
    f = _vec(f)
    P = md.Pmean
    out = []
    for x in range(md.n):
        sq = cross = ZERO
        for y in _nbrs(md, x):
            inner = ZERO
            for z in _nbrs(md, y):
                t = f[x] - 2 * f[y] + f[z]
                sq += t * t * P[x][y] * P[y][z]
                inner += t * P[y][z]
            # z = y contributes (f(x) - f(y)) with weight P(y,y) = 0, so nothing is lost
            cross += (f[x] - f[y]) * P[x][y] * inner
        out.append(sq / 2 - cross)
    return tuple(out)


def two_gamma_f_delta_f_closed(md, f: Sequence) -> Vector:
    md = _as_md(md)
    f = _vec(f)
    P = md.Pmean
    df = delta(md, f)
    out = []
    for x in range(md.n):
        cross = ZERO
        for y in _nbrs(md, x):
            inner = sum(((f[z] - f[y]) * P[y][z] for z in _nbrs(md, y)), ZERO)
            cross += (f[x] - f[y]) * P[x][y] * inner
        out.append(-df[x] ** 2 - cross)
    return tuple(out)


def triangle_fn(md) -> tuple[int, ...]:
    md = _as_md(md)
    N = [set(_nbrs(md, x)) for x in range(md.n)]
    return tuple(min(len(N[x] & N[y]) for y in N[x]) for x in range(md.n))


@dataclass(frozen=True)
class CDConstants:
    """Per-vertex curvature-dimension constants.

    ``K_hat`` and ``two_K_minus_3`` are only present when a curvature lower
    bound ``K`` was supplied.
    """

    T: tuple[int, ...]
    K0: Vector
    K1: Vector
    K: Vector
    K_tilde: Vector
    K_prime: Vector
    K_hat: Vector | None = None
    two_K_minus_3: Fraction | None = None


def cd_constants(md, K=None) -> CDConstants:
    md = _as_md(md)
    n = md.n
    P = md.Pmean
    N = [set(_nbrs(md, x)) for x in range(n)]
    T = triangle_fn(md)
    K0, K1 = [], []
    for x in range(n):
        K0.append(min(P[y][x] for y in N[x]))
        ratios = []
        empty = False
        for y in N[x]:
            common = N[x] & N[y]
            if not common:
                empty = True
                break
            ratios.append(min(P[y][z] for z in common) / P[y][x])
        # An empty inner index set counts as 0.
        K1.append(ZERO if empty else min(ratios))
    Kvec = tuple(k0 * (2 + T[x] * k1 / 2) - 1 for x, (k0, k1) in enumerate(zip(K0, K1)))
    Ktil = tuple(2 * k0 - 1 for k0 in K0)
    Kp = []
    for x in range(n):
        outs = [y for y in range(n) if md.P[x][y]]
        ins = [y for y in range(n) if md.P[y][x]]
        Kp.append(min(min(md.P[y][x] for y in outs), min(md.Prev[y][x] for y in ins)) - 1)
    Khat = c23 = None
    if K is not None:
        K = as_rational(K)
        c23 = 2 * K - 3
        Khat = tuple(c23 + (K - 1) / 2 * T[x] * K1[x] for x in range(n))
    return CDConstants(T, tuple(K0), tuple(K1), Kvec, Ktil, tuple(Kp), Khat, c23)


CD_VARIANTS = ("K", "K_tilde", "K_hat", "2K-3")


def cd_check(md, f: Sequence, variant: str = "K", K=None, constants: CDConstants | None = None) -> Vector:
    """``Γ₂(f,f) - ½(Δf)² - c(x) Γ(f,f)`` per vertex for the chosen constant ``c``."""
    md = _as_md(md)
    if variant not in CD_VARIANTS:
        raise DomainError(f"variant must be one of {CD_VARIANTS}")
    if variant in ("K_hat", "2K-3") and K is None and (constants is None or constants.K_hat is None):
        raise DomainError(f"variant {variant} needs a curvature lower bound K")
    c = constants if constants is not None else cd_constants(md, K)
    coef = {
        "K": c.K,
        "K_tilde": c.K_tilde,
        "K_hat": c.K_hat,
        "2K-3": None if c.two_K_minus_3 is None else (c.two_K_minus_3,) * md.n,
    }[variant]
    f = _vec(f)
    g2 = gamma2(md, f, f)
    g1 = gamma(md, f, f)
    df = delta(md, f)
    return tuple(a - d * d / 2 - k * b for a, d, k, b in zip(g2, df, coef, g1))
