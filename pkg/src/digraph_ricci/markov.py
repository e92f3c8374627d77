"""Transition kernels, the Perron measure and lazy random-walk measures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .digraph import WeightedDigraph
from .errors import DomainError, NonUnique, NoSolution, PerronDegenerate
from .exactnum import as_rational, solve_linear_system

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)


@dataclass(frozen=True)
class ProbMeasure:
    """A rational probability vector on the vertex set."""

    weights: Vector

    def __post_init__(self):
        w = tuple(as_rational(v) for v in self.weights)
        if any(v < 0 for v in w) or sum(w, ZERO) != 1:
            raise DomainError("probability weights must be nonnegative and sum to 1")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.weights) if v > 0)

    @classmethod
    def dirac(cls, n: int, x: int) -> "ProbMeasure":
        return cls(tuple(Fraction(1) if i == x else ZERO for i in range(n)))

    def mix(self, other: "ProbMeasure", t: Fraction) -> "ProbMeasure":
        """``(1 - t) * self + t * other``."""
        t = as_rational(t)
        return ProbMeasure(tuple((1 - t) * a + t * b for a, b in zip(self.weights, other.weights)))


@dataclass(frozen=True)
class MarkovData:
    P: Matrix
    m: Vector
    Prev: Matrix
    Pmean: Matrix
    mxy: Matrix

    @property
    def n(self) -> int:
        return len(self.m)


def perron_measure(P: Matrix) -> Vector:
    """Stationary probability of ``P`` from the exact system ``m^T (P - I) = 0``, ``sum(m) = 1``."""
    n = len(P)
    A = [[P[j][i] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    A.append([Fraction(1)] * n)
    b = [ZERO] * n + [Fraction(1)]
    try:
        m = solve_linear_system(A, b)
    except (NonUnique, NoSolution) as exc:
        raise PerronDegenerate(str(exc)) from exc
    if any(v <= 0 for v in m):
        raise PerronDegenerate("stationary vector is not strictly positive")
    return tuple(m)


@lru_cache(maxsize=256)
def build_markov(g: WeightedDigraph) -> MarkovData:
    n = g.n
    P = tuple(tuple(w / g.vertex_weight(x) for w in g.mu[x]) for x in range(n))
    m = perron_measure(P)
    Prev = tuple(tuple(m[y] * P[y][x] / m[x] for y in range(n)) for x in range(n))
    Pmean = tuple(tuple((P[x][y] + Prev[x][y]) / 2 for y in range(n)) for x in range(n))
    mxy = tuple(tuple(m[x] * Pmean[x][y] for y in range(n)) for x in range(n))
    return MarkovData(P=P, m=m, Prev=Prev, Pmean=Pmean, mxy=mxy)


def _check_eps(eps) -> Fraction:
    eps = as_rational(eps)
    if not 0 <= eps <= 1:
        raise DomainError(f"epsilon must lie in [0, 1], got {eps}")
    return eps


def kernel_measure(kernel: Matrix, x: int, eps) -> ProbMeasure:
    """``(1 - eps) * delta_x + eps * kernel[x]`` for any kernel with zero diagonal."""
    eps = _check_eps(eps)
    row = kernel[x]
    return ProbMeasure(tuple((1 - eps) + eps * row[z] if z == x else eps * row[z] for z in range(len(row))))


def lazy_measure(md: MarkovData, x: int, eps) -> ProbMeasure:
    return kernel_measure(md.Pmean, x, eps)


def matvec(M: Matrix, f: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, f) if a), ZERO) for row in M)


def averaging_apply(md: MarkovData, eps, f: Sequence) -> Vector:
    """Average of ``f`` against each lazy measure; equals ``f + eps * Δf``."""
    eps = _check_eps(eps)
    f = tuple(as_rational(v) for v in f)
    Pf = matvec(md.Pmean, f)
    return tuple((1 - eps) * fx + eps * pfx for fx, pfx in zip(f, Pf))
