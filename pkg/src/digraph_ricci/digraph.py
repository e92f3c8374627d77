"""Weighted directed graphs, hop distances, and the named example families."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, NotStronglyConnected, ParseError, SelfLoop
from .exactnum import as_rational, format_rational


def _bfs(adj: Sequence[Sequence[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """A simple, strongly connected digraph with positive rational edge weights.

    Vertices are the integers ``0..n-1``; ``labels`` only matter for I/O.
    ``mu[x][y] > 0`` exactly when ``x -> y`` is an edge.  Construction
    validates simpleness, nonnegativity and strong connectivity, so nothing
    downstream re-checks them.
    """

    mu: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = len(self.mu)
        if n < 2:
            raise DomainError("a graph needs at least two vertices")
        mu = tuple(tuple(as_rational(w) for w in row) for row in self.mu)
        if any(len(row) != n for row in mu):
            raise DomainError("weight matrix must be square")
        labels = tuple(self.labels) if self.labels else tuple(f"x{i + 1}" for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise DomainError("labels must be unique, one per vertex")
        for i in range(n):
            if mu[i][i] != 0:
                raise SelfLoop(f"self-loop at {labels[i]}")
            for j in range(n):
                if mu[i][j] < 0:
                    raise DomainError(f"negative weight on {labels[i]}→{labels[j]}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "labels", labels)
        out_adj = tuple(tuple(j for j in range(n) if mu[i][j] > 0) for i in range(n))
        in_adj = tuple(tuple(j for j in range(n) if mu[j][i] > 0) for i in range(n))
        object.__setattr__(self, "_out", out_adj)
        object.__setattr__(self, "_in", in_adj)
        # Double-reachability sweep from vertex 0.
        fwd = _bfs(out_adj, 0)
        if -1 in fwd:
            raise NotStronglyConnected(labels[0], labels[fwd.index(-1)])
        back = _bfs(in_adj, 0)
        if -1 in back:
            raise NotStronglyConnected(labels[back.index(-1)], labels[0])
        object.__setattr__(self, "_dist", tuple(tuple(_bfs(out_adj, s)) for s in range(n)))

    @property
    def n(self) -> int:
        return len(self.mu)

    def out_neighbors(self, x: int) -> tuple[int, ...]:
        return self._out[x]

    def in_neighbors(self, x: int) -> tuple[int, ...]:
        return self._in[x]

    def has_edge(self, x: int, y: int) -> bool:
        return self.mu[x][y] > 0

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in self._out[x]]

    def vertex_weight(self, x: int) -> Fraction:
        return sum(self.mu[x], Fraction(0))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown vertex {label!r}") from None

    def reversed(self) -> "WeightedDigraph":
        n = self.n
        return WeightedDigraph(tuple(tuple(self.mu[j][i] for j in range(n)) for i in range(n)), self.labels)

    def symmetrized(self) -> "WeightedDigraph":
        """Undirected graph with weight ``mu_xy + mu_yx`` on both directions."""
        n = self.n
        return WeightedDigraph(
            tuple(tuple(self.mu[i][j] + self.mu[j][i] for j in range(n)) for i in range(n)), self.labels
        )

    def __eq__(self, other):
        return isinstance(other, WeightedDigraph) and self.mu == other.mu and self.labels == other.labels

    def __hash__(self):
        return hash((self.mu, self.labels))

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class DistanceMatrix:
    d: tuple[tuple[int, ...], ...]

    def __getitem__(self, pair: tuple[int, int]) -> int:
        x, y = pair
        return self.d[x][y]

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def diameter(self) -> int:
        return max(max(row) for row in self.d)

    def sym(self, x: int, y: int) -> int:
        """``max(d(x,y), d(y,x))``."""
        return max(self.d[x][y], self.d[y][x])


def distances(g: WeightedDigraph) -> DistanceMatrix:
    """Hop-count distances; edge weights play no role here."""
    return DistanceMatrix(g._dist)


def neighborhoods(g: WeightedDigraph, x: int) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Out-neighbors, in-neighbors and their union."""
    out, inn = frozenset(g.out_neighbors(x)), frozenset(g.in_neighbors(x))
    return out, inn, out | inn


def union_neighbors(g: WeightedDigraph, x: int) -> frozenset[int]:
    return frozenset(g.out_neighbors(x)) | frozenset(g.in_neighbors(x))


def inscribed_radius(g: WeightedDigraph, x: int) -> int:
    return max(g._dist[x])


@dataclass(frozen=True)
class Classification:
    unweighted: bool
    undirected: bool
    eulerian: bool
    regular: int | None

    def as_dict(self) -> dict:
        return {
            "unweighted": self.unweighted,
            "undirected": self.undirected,
            "eulerian": self.eulerian,
            "regular": self.regular,
        }


def classify(g: WeightedDigraph) -> Classification:
    """Eulerian and r-regular are only meaningful for unweighted graphs."""
    n = g.n
    unweighted = all(w in (0, 1) for row in g.mu for w in row)
    undirected = all(g.mu[i][j] == g.mu[j][i] for i in range(n) for j in range(i + 1, n))
    eulerian = unweighted and all(len(g.out_neighbors(x)) == len(g.in_neighbors(x)) for x in range(n))
    degrees = {len(g.out_neighbors(x)) for x in range(n)}
    regular = degrees.pop() if eulerian and len(degrees) == 1 else None
    return Classification(unweighted, undirected, eulerian, regular)


def from_matrix(weights: Sequence[Sequence], labels: Sequence[str] | None = None) -> WeightedDigraph:
    return WeightedDigraph(tuple(tuple(as_rational(w) for w in row) for row in weights), tuple(labels or ()))


def from_edges(n: int, edges: Iterable[tuple[int, int]] | Iterable[tuple[int, int, object]], labels=None) -> WeightedDigraph:
    mu = [[Fraction(0)] * n for _ in range(n)]
    for e in edges:
        x, y = e[0], e[1]
        mu[x][y] = as_rational(e[2]) if len(e) > 2 else Fraction(1)
    return WeightedDigraph(tuple(map(tuple, mu)), tuple(labels or ()))


def from_edge_list(text: str) -> WeightedDigraph:
    """Parse the tab-separated ``src<TAB>dst<TAB>weight`` format.

    Weights are decimals or ``p/q`` literals and must be positive.  Lines
    starting with ``#`` and blank lines are skipped.  Vertex order is the
    order of first appearance.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    weights: dict[tuple[int, int], Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = raw.rstrip("\r\n").split("\t")
        parts = [p.strip() for p in parts]
        if len(parts) != 3 or not all(parts):
            raise ParseError("expected <src>\\t<dst>\\t<weight>", lineno)
        src, dst, wtxt = parts
        if any(ch.isspace() for ch in src + dst):
            raise ParseError("labels may not contain whitespace", lineno)
        try:
            w = Fraction(wtxt)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {wtxt!r}", lineno) from None
        if w <= 0:
            raise ParseError(f"weight must be positive, got {wtxt}", lineno)
        if src == dst:
            raise SelfLoop(f"self-loop at {src}", lineno)
        for lab in (src, dst):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        key = (index[src], index[dst])
        if key in weights:
            raise ParseError(f"duplicate edge {src}→{dst}", lineno)
        weights[key] = w
    if len(labels) < 2:
        raise ParseError("graph needs at least two vertices")
    n = len(labels)
    mu = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), w in weights.items():
        mu[i][j] = w
    return WeightedDigraph(tuple(map(tuple, mu)), tuple(labels))


def to_edge_list(g: WeightedDigraph) -> str:
    lines = []
    for x, y in g.edges:
        w = g.mu[x][y]
        wtxt = str(w.numerator) if w.denominator == 1 else format_rational(w)
        lines.append(f"{g.labels[x]}\t{g.labels[y]}\t{wtxt}")
    return "\n".join(lines) + "\n"


def gen_complete(n: int) -> WeightedDigraph:
    """Directed complete graph: every ordered pair except ``x_{i+1}→x_i`` and ``x_1→x_n``."""
    if n < 3:
        raise DomainError("gen_complete needs n >= 3")
    removed = {(i + 1, i) for i in range(n - 1)} | {(0, n - 1)}
    return from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) not in removed])


def gen_cycle(n: int) -> WeightedDigraph:
    """Directed cycle ``x_1→x_2→…→x_n→x_1``."""
    if n < 3:
        raise DomainError("gen_cycle needs n >= 3")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_undirected(n: int, edges: Iterable[tuple[int, int]]) -> WeightedDigraph:
    both = []
    for x, y in edges:
        both += [(x, y), (y, x)]
    return from_edges(n, both)


def gen_random(n: int, seed: int, extra_edges: int | None = None, max_weight: int = 5) -> WeightedDigraph:
    """Random strongly connected digraph with rational weights.

    A shuffled Hamiltonian cycle guarantees strong connectivity; further
    random arcs are added on top.  Weights are ``p/q`` with ``1 <= p, q <= max_weight``.
    """
    if n < 2:
        raise DomainError("gen_random needs n >= 2")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    candidates = [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) not in arcs]
    rng.shuffle(candidates)
    k = n if extra_edges is None else extra_edges
    arcs |= set(candidates[:k])
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i, j in sorted(arcs):
        mu[i][j] = Fraction(rng.randint(1, max_weight), rng.randint(1, max_weight))
    return WeightedDigraph(tuple(map(tuple, mu)))
