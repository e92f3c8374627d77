"""Input coercion for the estimator facade."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

from .digraph import WeightedDigraph, from_matrix
from .errors import DomainError


def _to_fraction(v) -> Fraction:
    if isinstance(v, bool):
        raise DomainError("booleans are not edge weights")
    if isinstance(v, (Fraction, Integral)):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(int(v.numerator), int(v.denominator))
    if isinstance(v, str):
        return Fraction(v)
    try:
        fv = float(v)
    except (TypeError, ValueError):
        raise DomainError(f"cannot read {v!r} as an edge weight") from None
    # Floats are read through their shortest decimal repr, so 0.1 means 1/10.
    return Fraction(repr(fv))


def check_graph(X, labels=None) -> WeightedDigraph:
    """Coerce ``X`` to a validated :class:`WeightedDigraph`.

    Accepts a graph (returned unchanged), a ``networkx`` digraph with an
    optional ``weight`` edge attribute, or any square array-like of weights.
    """
    if isinstance(X, WeightedDigraph):
        return X
    if hasattr(X, "nodes") and hasattr(X, "edges") and hasattr(X, "is_directed"):
        nodes = list(X.nodes)
        pos = {v: i for i, v in enumerate(nodes)}
        n = len(nodes)
        mu = [[Fraction(0)] * n for _ in range(n)]
        for a, b, data in X.edges(data=True):
            w = _to_fraction(data.get("weight", 1))
            mu[pos[a]][pos[b]] = w
            if not X.is_directed():
                mu[pos[b]][pos[a]] = w
        return WeightedDigraph(tuple(map(tuple, mu)), tuple(str(v) for v in nodes))
    try:
        rows = [list(r) for r in X]
    except TypeError:
        raise DomainError(f"cannot interpret {type(X).__name__} as a graph") from None
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("weight matrix must be square")
    return from_matrix([[_to_fraction(v) for v in r] for r in rows], labels)


def check_pairs(g: WeightedDigraph, pairs) -> list[tuple[int, int]]:
    """Vertex pairs given as indices or labels, resolved to distinct index pairs."""
    out = []
    for p in pairs:
        if len(p) != 2:
            raise DomainError(f"expected a pair, got {p!r}")
        idx = tuple(g.index(v) if isinstance(v, str) else int(v) for v in p)
        if not all(0 <= i < g.n for i in idx):
            raise DomainError(f"vertex out of range in {p!r}")
        if idx[0] == idx[1]:
            raise DomainError(f"pair {p!r} repeats a vertex")
        out.append(idx)
    return out
