"""Spectrum of the Chung Laplacian and Dirichlet constants on vertex subsets.

This is the one place floats are allowed: eigenvalues are generally
irrational, and the p-Rayleigh quotient for p != 2 is minimized numerically.
Isoperimetric constants and the co-area identity stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import BudgetExceeded, DomainError
from .exactnum import as_rational
from .markov import MarkovData
from .operators import LaplacianData, _as_md

ISO_MAX_SUBSET = 22
FLOAT_SLACK = 1e-9


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    residuals: tuple[float, ...]
    vectors: np.ndarray  # columns are eigenvectors of the symmetrized operator

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[1]


def _float_md(md: MarkovData) -> tuple[np.ndarray, np.ndarray]:
    m = np.array([float(v) for v in md.m])
    mxy = np.array([[float(v) for v in row] for row in md.mxy])
    return m, mxy


def symmetrized_laplacian(md) -> np.ndarray:
    """``D^{1/2} L D^{-1/2}`` with ``D = diag(m)``; symmetric since ``m_xy`` is."""
    md = _as_md(md)
    m, mxy = _float_md(md)
    s = np.sqrt(m)
    S = np.eye(md.n) - mxy / np.outer(s, s)
    return (S + S.T) / 2


def spectrum(md_or_ld) -> Spectrum:
    if isinstance(md_or_ld, LaplacianData):
        m = np.array([float(v) for v in md_or_ld.innerweights])
        L = np.array([[float(v) for v in row] for row in md_or_ld.L])
        s = np.sqrt(m)
        S = s[:, None] * L / s[None, :]
        S = (S + S.T) / 2
    else:
        S = symmetrized_laplacian(md_or_ld)
    w, V = np.linalg.eigh(S)
    res = tuple(float(np.linalg.norm(S @ V[:, i] - w[i] * V[:, i])) for i in range(len(w)))
    return Spectrum(tuple(float(v) for v in w), res, V)


def _check_subset(md: MarkovData, subset: Iterable[int]) -> list[int]:
    sub = sorted(set(subset))
    if not sub or len(sub) >= md.n:
        raise DomainError("subset must be nonempty and proper")
    if sub[0] < 0 or sub[-1] >= md.n:
        raise DomainError("subset vertex out of range")
    return sub


def boundary_measure(md: MarkovData, omega: Iterable[int]) -> Fraction:
    om = set(omega)
    return sum((md.mxy[y][z] for y in om for z in range(md.n) if z not in om), Fraction(0))


def dirichlet_isoperimetric(md, subset: Iterable[int]) -> tuple[Fraction, tuple[int, ...]]:
    """Exact minimum of ``m(∂Ω)/m(Ω)`` over nonempty ``Ω`` inside ``subset``.

    Walks all subsets in Gray-code order with integer-scaled weights, so each
    step updates boundary and volume in O(|subset|).
    """
    md = _as_md(md)
    sub = _check_subset(md, subset)
    k = len(sub)
    if k > ISO_MAX_SUBSET:
        raise BudgetExceeded(f"isoperimetric enumeration capped at {ISO_MAX_SUBSET} vertices, got {k}")
    scale = lcm(*(q.denominator for row in md.mxy for q in row), *(q.denominator for q in md.m))
    W = [[int(md.mxy[a][b] * scale) for b in sub] for a in sub]
    deg = [int(sum(md.mxy[a], Fraction(0)) * scale) for a in sub]
    vol = [int(md.m[a] * scale) for a in sub]
    inside = [False] * k
    conn = [0] * k  # conn[v] = sum of W[u][v] over u inside
    bnd = mass = 0
    best = None
    mask = 0
    for i in range(1, 1 << k):
        v = (i & -i).bit_length() - 1
        if inside[v]:
            bnd += 2 * conn[v] - deg[v]
            mass -= vol[v]
            sign = -1
        else:
            bnd += deg[v] - 2 * conn[v]
            mass += vol[v]
            sign = 1
        inside[v] = not inside[v]
        mask ^= 1 << v
        row = W[v]
        for u in range(k):
            conn[u] += sign * row[u]
        if best is None or bnd * best[1] < best[0] * mass:
            best = (bnd, mass, mask)
    omega = tuple(sub[j] for j in range(k) if best[2] >> j & 1)
    return Fraction(best[0], best[1]), omega


def rayleigh_p(md, f: Sequence[float], p: float) -> float:
    md = _as_md(md)
    m, mxy = _float_md(md)
    f = np.asarray(f, dtype=float)
    num = 0.5 * (np.abs(f[None, :] - f[:, None]) ** p * mxy).sum()
    den = (np.abs(f) ** p * m).sum()
    return float(num / den)


def cheeger_bound(iso, p: float) -> float:
    return 2 ** (p - 1) / p**p * float(iso) ** p


@dataclass(frozen=True)
class DirichletResult:
    subset: tuple[int, ...]
    p: float
    value: float
    minimizer: tuple[float, ...]
    isoperimetric: Fraction
    witness: tuple[int, ...]

    @property
    def cheeger(self) -> float:
        return cheeger_bound(self.isoperimetric, self.p)


def _dirichlet2(md: MarkovData, sub: list[int]) -> tuple[float, np.ndarray]:
    S = symmetrized_laplacian(md)[np.ix_(sub, sub)]
    w, V = np.linalg.eigh(S)
    m = np.array([float(md.m[i]) for i in sub])
    f = np.zeros(md.n)
    f[sub] = V[:, 0] / np.sqrt(m)
    if f[sub].sum() < 0:
        f = -f
    return float(w[0]), f


def _descend(md: MarkovData, sub: list[int], p: float, start: np.ndarray, restarts: int, seed: int):
    m, mxy = _float_md(md)
    n = md.n
    rng = np.random.default_rng(seed)

    def objective(u):
        f = np.zeros(n)
        f[sub] = u
        diff = f[:, None] - f[None, :]
        a = np.abs(diff)
        num = 0.5 * (a**p * mxy).sum()
        den = (np.abs(f) ** p * m).sum()
        if den <= 0:
            return np.inf, np.zeros_like(u)
        gnum = p * (np.sign(diff) * a ** (p - 1) * mxy).sum(axis=1)
        gden = p * np.sign(f) * np.abs(f) ** (p - 1) * m
        R = num / den
        grad = (gnum - R * gden) / den
        return R, grad[sub]

    best_val, best_f = math.inf, None
    base = np.abs(start[sub])
    for r in range(restarts):
        u0 = base if r == 0 else np.abs(base + rng.normal(scale=0.5, size=len(sub)) * (base.max() + 1e-3))
        u0 = u0 / (np.abs(u0).max() or 1.0)
        res = minimize(objective, u0, jac=True, method="L-BFGS-B")
        if res.fun < best_val:
            best_val = float(res.fun)
            best_f = np.zeros(n)
            best_f[sub] = res.x / np.abs(res.x).max()
    return best_val, best_f


def dirichlet_poincare(md, subset: Iterable[int], p=2, restarts: int = 32, seed: int = 0) -> DirichletResult:
    """Dirichlet p-Poincaré constant of ``subset``.

    ``p == 2`` is an eigenvalue of the principal submatrix.  Other ``p`` are
    minimized from ``restarts`` starting points and the best value found is
    reported; it is an upper estimate of the true infimum.
    """
    md = _as_md(md)
    sub = _check_subset(md, subset)
    p = float(p)
    if p <= 1:
        raise DomainError(f"p must exceed 1, got {p}")
    lam2, f2 = _dirichlet2(md, sub)
    if p == 2:
        value, f = lam2, f2
    else:
        value, f = _descend(md, sub, p, f2, restarts, seed)
    iso, omega = dirichlet_isoperimetric(md, sub)
    return DirichletResult(tuple(sub), p, value, tuple(float(v) for v in f), iso, omega)


def coarea_check(md, f: Sequence) -> tuple[Fraction, Fraction]:
    """Integral of the boundary measure of super-level sets, and the edge sum it equals."""
    md = _as_md(md)
    f = [as_rational(v) for v in f]
    n = md.n
    levels = sorted(set(f))
    lhs = Fraction(0)
    for lo, hi in zip(levels, levels[1:]):
        lhs += (hi - lo) * boundary_measure(md, [x for x in range(n) if f[x] >= hi])
    rhs = sum((abs(f[y] - f[z]) * md.mxy[y][z] for y in range(n) for z in range(n)), Fraction(0)) / 2
    return lhs, rhs


def coarea_lower_bound_check(md, subset: Iterable[int], f: Sequence) -> tuple[Fraction, Fraction]:
    """For nonnegative ``f`` vanishing off ``subset``: edge sum and ``I^D * Σ f m``."""
    md = _as_md(md)
    f = [as_rational(v) for v in f]
    sub = set(_check_subset(md, subset))
    if any(v < 0 for v in f) or any(f[x] for x in range(md.n) if x not in sub):
        raise DomainError("f must be nonnegative and vanish outside the subset")
    iso, _ = dirichlet_isoperimetric(md, sub)
    lhs = coarea_check(md, f)[1]
    return lhs, iso * sum((a * b for a, b in zip(f, md.m)), Fraction(0))


def amghibech_check(p: float, a: float, b: float) -> tuple[float, float]:
    """Both sides of ``|b^p - a^p| <= p |b - a| ((a^p + b^p)/2)^(1/q)`` for ``a, b >= 0``."""
    if a < 0 or b < 0:
        raise DomainError("arguments must be nonnegative")
    q = p / (p - 1)
    return abs(b**p - a**p), p * abs(b - a) * ((a**p + b**p) / 2) ** (1 / q)
