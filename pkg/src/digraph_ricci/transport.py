"""L1-Wasserstein distance on the (non-symmetric) hop metric.

The dual Kantorovich problem is solved first; it yields the 1-Lipschitz
potential directly.  A primal coupling is then recovered on the pairs where
that potential is tight, so every result certifies itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .digraph import DistanceMatrix
from .errors import DomainError
from .exactnum import EQ, LE, Constraint, LinearProgram, solve_lp
from .markov import ProbMeasure

ZERO = Fraction(0)


@dataclass(frozen=True)
class Coupling:
    pi: tuple[tuple[Fraction, ...], ...]

    def marginals(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        n = len(self.pi)
        rows = tuple(sum(r, ZERO) for r in self.pi)
        cols = tuple(sum((self.pi[i][j] for i in range(n)), ZERO) for j in range(n))
        return rows, cols


@dataclass(frozen=True)
class TransportResult:
    cost: Fraction
    coupling: Coupling
    dual_potential: tuple[Fraction, ...]


def _as_measure(nu) -> ProbMeasure:
    return nu if isinstance(nu, ProbMeasure) else ProbMeasure(tuple(nu))


def _extend(d: DistanceMatrix, S: list[int], fS: dict[int, Fraction]) -> tuple[Fraction, ...]:
    # Smallest 1-Lipschitz extension; agrees with fS on S.
    return tuple(min(fS[v] + d.d[v][w] for v in S) for w in range(d.n))


def optimal_potential(d: DistanceMatrix, nu0: ProbMeasure, nu1: ProbMeasure) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Maximize ``sum f (nu1 - nu0)`` over 1-Lipschitz ``f``; return value and ``f``."""
    S = sorted(set(nu0.support) | set(nu1.support))
    s = nu0.support[0]
    free = [v for v in S if v != s]
    if not free:
        return ZERO, _extend(d, S, {s: ZERO})
    col = {v: k for k, v in enumerate(free)}
    # g(v) = f(v) + d(v, s) >= 0 with f(s) = 0 pinned.
    c = [nu1[v] - nu0[v] for v in free]
    rows = []
    for v in S:
        for w in S:
            if v == w:
                continue
            coeffs = [ZERO] * len(free)
            if w in col:
                coeffs[col[w]] += 1
            if v in col:
                coeffs[col[v]] -= 1
            rhs = d.d[v][w] + d.d[w][s] - d.d[v][s]
            rows.append(Constraint(tuple(coeffs), LE, Fraction(rhs)))
    res = solve_lp(LinearProgram(tuple(c), tuple(rows), "maximize"))
    fS = {s: ZERO}
    for v in free:
        fS[v] = res.witness[col[v]] - d.d[v][s]
    f = _extend(d, S, fS)
    value = sum((f[v] * (nu1[v] - nu0[v]) for v in S), ZERO)
    return value, f


def wasserstein(d: DistanceMatrix, nu0, nu1) -> TransportResult:
    """Exact ``W(nu0, nu1)`` with an optimal coupling and a dual potential."""
    nu0, nu1 = _as_measure(nu0), _as_measure(nu1)
    n = d.n
    if len(nu0) != n or len(nu1) != n:
        raise DomainError("measures and distance matrix disagree on vertex count")
    value, f = optimal_potential(d, nu0, nu1)

    src, dst = nu0.support, nu1.support
    tight = [(v, w) for v in src for w in dst if f[w] - f[v] == d.d[v][w]]
    k = len(tight)
    cons = []
    for v in src:
        cons.append(Constraint(tuple(Fraction(1) if p[0] == v else ZERO for p in tight), EQ, nu0[v]))
    for w in dst:
        cons.append(Constraint(tuple(Fraction(1) if p[1] == w else ZERO for p in tight), EQ, nu1[w]))
    sol = solve_lp(LinearProgram(tuple(Fraction(d.d[v][w]) for v, w in tight), tuple(cons)))
    pi = [[ZERO] * n for _ in range(n)]
    for (v, w), amount in zip(tight, sol.witness):
        pi[v][w] = amount
    cost = sum((d.d[v][w] * pi[v][w] for v, w in tight), ZERO)
    if cost != value:
        raise RuntimeError(f"duality gap {cost} != {value}; transport solver is broken")
    return TransportResult(cost=cost, coupling=Coupling(tuple(map(tuple, pi))), dual_potential=f)


def wasserstein_value(d: DistanceMatrix, nu0, nu1) -> Fraction:
    """Just the optimal value, skipping coupling recovery."""
    return optimal_potential(d, _as_measure(nu0), _as_measure(nu1))[0]


BRUTE_MAX_N = 7
BRUTE_MAX_DIAM = 6


@lru_cache(maxsize=64)
def _integer_lipschitz_functions(d: tuple[tuple[int, ...], ...], diam: int) -> np.ndarray:
    n = len(d)
    found: list[tuple[int, ...]] = []
    f = [0] * n

    def extend(k: int) -> None:
        if k == n:
            if min(f) == 0:
                found.append(tuple(f))
            return
        for val in range(diam + 1):
            if all(val - f[v] <= d[v][k] and f[v] - val <= d[k][v] for v in range(k)):
                f[k] = val
                extend(k + 1)

    extend(0)
    return np.array(found, dtype=np.int64)


def wasserstein_bruteforce(d: DistanceMatrix, nu0, nu1) -> Fraction:
    """Independent oracle: maximize over all integer 1-Lipschitz potentials.

    The Lipschitz constraints form a difference system with integer
    right-hand sides, so some optimal potential is integral and, after a
    shift, takes values in ``0..diam``.
    """
    nu0, nu1 = _as_measure(nu0), _as_measure(nu1)
    n, diam = d.n, d.diameter
    if n > BRUTE_MAX_N or diam > BRUTE_MAX_DIAM:
        raise DomainError(f"brute force limited to n <= {BRUTE_MAX_N}, diameter <= {BRUTE_MAX_DIAM}")
    F = _integer_lipschitz_functions(d.d, diam)
    diff = [b - a for a, b in zip(nu0.weights, nu1.weights)]
    scale = lcm(*(q.denominator for q in diff))
    ints = [int(q * scale) for q in diff]
    if scale < 2**40:
        best = int((F @ np.array(ints, dtype=np.int64)).max())
    else:
        best = max(sum(int(a) * b for a, b in zip(row, ints)) for row in F)
    return Fraction(best, scale)
