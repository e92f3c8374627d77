"""Machine checks of the comparison theorems, one verdict per instance.

Every hypothesis constant (K, Λ, D, M) is computed from the graph itself.
Instances whose hypotheses fail are kept in the output with an explicit
status instead of being dropped, so two reports on related graphs diff
cleanly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .curvature import CurvatureReport, MeanCurvatures, curvature_report, mean_curvatures
from .digraph import DistanceMatrix, WeightedDigraph, classify, distances, inscribed_radius
from .errors import HypothesisNotMet
from .markov import MarkovData, build_markov
from .operators import CD_VARIANTS, cd_check, cd_constants, laplacian_data, apply_laplacian
from .spectral import FLOAT_SLACK, dirichlet_isoperimetric, dirichlet_poincare, spectrum

HOLDS, FAILS, VACUOUS, NOT_MET = "holds", "fails", "vacuous", "hypothesis-not-met"


@dataclass
class TheoremVerdict:
    """``lhs`` is the side that the theorem says is the larger one."""

    theorem: str
    status: str
    lhs: Any = None
    rhs: Any = None
    slack: float = 0
    hypotheses: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


def _judge(theorem, lhs, rhs, slack=0, **kw) -> TheoremVerdict:
    ok = lhs >= rhs - slack
    return TheoremVerdict(theorem, HOLDS if ok else FAILS, lhs, rhs, slack, **kw)


@dataclass
class Analysis:
    """Everything the theorem checks share, computed once per graph."""

    g: WeightedDigraph
    md: MarkovData
    dm: DistanceMatrix
    mc: MeanCurvatures
    pairs: CurvatureReport

    def K_from(self, x: int) -> Fraction:
        return min(v for (a, _), v in self.pairs.kappa.items() if a == x)

    def sphere(self, x: int, R: int) -> list[int]:
        return [y for y in range(self.g.n) if self.dm.d[x][y] == R]

    def mass(self, verts) -> Fraction:
        return sum((self.md.m[v] for v in verts), Fraction(0))


_CACHE: dict[WeightedDigraph, Analysis] = {}


def analysis(g: WeightedDigraph, n_jobs: int = 1) -> Analysis:
    """Shared per-graph data; the thread count only affects how it is computed."""
    an = _CACHE.get(g)
    if an is None:
        md = build_markov(g)
        an = Analysis(g, md, distances(g), mean_curvatures(g, md), curvature_report(g, "all", md, n_jobs))
        if len(_CACHE) > 32:
            _CACHE.clear()
        _CACHE[g] = an
    return an


def _lift(value: Fraction) -> tuple[Fraction, bool]:
    return (value, False) if value >= 2 else (Fraction(2), True)


def check_bonnet_myers(g: WeightedDigraph, an: Analysis | None = None) -> list[TheoremVerdict]:
    an = an or analysis(g)
    out = []
    for (x, y), k in sorted(an.pairs.kappa.items()):
        if k > 0:
            out.append(
                _judge("bonnet-myers", an.mc.Hmix[x][y] / k, Fraction(an.dm.d[x][y]),
                       hypotheses={"kappa": k}, context={"x": x, "y": y})
            )
    if not out:
        out.append(TheoremVerdict("bonnet-myers", VACUOUS, note="no pair has positive curvature"))
    for x in range(g.n):
        K = an.K_from(x)
        Lam, lifted = _lift(max(an.mc.Hmix[x][y] for y in range(g.n) if y != x))
        hyp = {"K": K, "Lambda": Lam, "Lambda_lifted": lifted}
        if K <= 0:
            out.append(TheoremVerdict("inscribed-radius", NOT_MET, hypotheses=hyp, context={"x": x}, note="K <= 0"))
        else:
            out.append(_judge("inscribed-radius", Lam / K, Fraction(inscribed_radius(g, x)),
                              hypotheses=hyp, context={"x": x}))
    return out


def volume_constant(md: MarkovData) -> Fraction:
    """``inf_y inf_{z ~ y} P(z, y)``."""
    n = md.n
    return min(md.Pmean[z][y] for y in range(n) for z in range(n) if md.Pmean[y][z])


def check_volume(g: WeightedDigraph, x: int, an: Analysis | None = None) -> list[TheoremVerdict]:
    an = an or analysis(g)
    K = an.K_from(x)
    Lam, lifted = _lift(max(an.mc.Hmix[x][y] for y in range(g.n) if y != x))
    M = volume_constant(an.md)
    hyp = {"K": K, "Lambda": Lam, "Lambda_lifted": lifted, "M": M}
    D = inscribed_radius(g, x)
    P = an.md.Pmean
    out = []
    for R in range(0, D + 1):
        ctx = {"x": x, "R": R}
        if K * R > Lam:
            out.append(TheoremVerdict("volume-ratio", NOT_MET, hypotheses=hyp, context=ctx, note="KR > Lambda"))
            continue
        ratio = an.mass(an.sphere(x, R + 1)) / an.mass(an.sphere(x, R))
        out.append(_judge("volume-ratio", (Lam - K * R) / (2 * M), ratio, hypotheses=hyp, context=ctx))
        if R >= 1:
            outer = set(an.sphere(x, R + 1))
            for y in an.sphere(x, R):
                mass = sum((P[y][z] for z in outer if P[y][z]), Fraction(0))
                out.append(_judge("volume-kernel-mass", (Lam - K * R) / 2, mass, hypotheses=hyp,
                                  context={"x": x, "R": R, "y": y}))
    for R in range(1, D + 1):
        ctx = {"x": x, "R": R}
        if (R - 1) * K > Lam:
            for name in ("volume-sphere", "volume-ball"):
                out.append(TheoremVerdict(name, NOT_MET, hypotheses=hyp, context=ctx, note="(R-1)K > Lambda"))
            continue
        prods, acc = [], Fraction(1)
        for i in range(R):
            acc *= (Lam - i * K) / (2 * M)
            prods.append(acc)
        mx = an.md.m[x]
        out.append(_judge("volume-sphere", mx * prods[-1], an.mass(an.sphere(x, R)), hypotheses=hyp, context=ctx))
        ball = [y for y in range(g.n) if an.dm.d[x][y] <= R]
        out.append(_judge("volume-ball", mx * (1 + sum(prods, Fraction(0))), an.mass(ball), hypotheses=hyp, context=ctx))
    return out


def _rho(an: Analysis, x: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in an.dm.d[x])


def check_laplacian_comparison(g: WeightedDigraph, x: int, an: Analysis | None = None) -> list[TheoremVerdict]:
    an = an or analysis(g)
    K = an.K_from(x)
    Lam = an.mc.H[x]
    rho = _rho(an, x)
    Lrho = apply_laplacian(laplacian_data(an.md), rho)
    hyp = {"K": K, "Lambda": Lam}
    return [
        _judge("laplacian-comparison", Lrho[y], K * rho[y] + Lam, hypotheses=hyp, context={"x": x, "y": y})
        for y in range(g.n)
        if y != x
    ]


def _er_hypotheses(an: Analysis, x: int, R: int) -> tuple[dict, list[int]]:
    if R < 1:
        raise HypothesisNotMet("R must be at least 1")
    K, Lam, D = an.K_from(x), an.mc.H[x], inscribed_radius(an.g, x)
    hyp = {"K": K, "Lambda": Lam, "D": D, "R": R}
    E = [y for y in range(an.g.n) if an.dm.d[x][y] >= R]
    if K * R + Lam <= 0:
        raise HypothesisNotMet(f"KR + Lambda = {K * R + Lam} is not positive")
    if not E:
        raise HypothesisNotMet(f"E_{R} is empty")
    return hyp, E


def check_isoperimetric_ER(g: WeightedDigraph, x: int, R: int, an: Analysis | None = None) -> TheoremVerdict:
    an = an or analysis(g)
    hyp, E = _er_hypotheses(an, x, R)
    iso, omega = dirichlet_isoperimetric(an.md, E)
    bound = (hyp["K"] * R + hyp["Lambda"]) / hyp["D"]
    return _judge("isoperimetric-ER", iso, bound, hypotheses=hyp, context={"x": x, "R": R, "witness": list(omega)})


def check_main_theorem(g: WeightedDigraph, x: int, R: int, p=2, an: Analysis | None = None) -> TheoremVerdict:
    an = an or analysis(g)
    hyp, E = _er_hypotheses(an, x, R)
    p = float(p)
    lam = dirichlet_poincare(an.md, E, p).value
    base = float((hyp["K"] * R + hyp["Lambda"]) / hyp["D"])
    bound = 2 ** (p - 1) / p**p * base**p
    return _judge("dirichlet-eigenvalue-ER", lam, bound, FLOAT_SLACK, hypotheses={**hyp, "p": p},
                  context={"x": x, "R": R})


def check_lichnerowicz(g: WeightedDigraph, an: Analysis | None = None) -> TheoremVerdict:
    an = an or analysis(g)
    K = an.pairs.global_min
    if K <= 0:
        raise HypothesisNotMet(f"global curvature minimum {K} is not positive")
    lam1 = spectrum(an.md).lambda1
    return _judge("lichnerowicz", lam1, float(K), FLOAT_SLACK, hypotheses={"K": K})


def _not_met(theorem: str, exc: HypothesisNotMet, **context) -> TheoremVerdict:
    return TheoremVerdict(theorem, NOT_MET, context=context, note=str(exc))


def all_verdicts(g: WeightedDigraph, an: Analysis | None = None) -> list[TheoremVerdict]:
    an = an or analysis(g)
    out = check_bonnet_myers(g, an)
    try:
        out.append(check_lichnerowicz(g, an))
    except HypothesisNotMet as exc:
        out.append(_not_met("lichnerowicz", exc))
    for x in range(g.n):
        out += check_volume(g, x, an)
        out += check_laplacian_comparison(g, x, an)
        for R in range(1, inscribed_radius(g, x) + 1):
            for fn, name in ((check_isoperimetric_ER, "isoperimetric-ER"), (check_main_theorem, "dirichlet-eigenvalue-ER")):
                try:
                    out.append(fn(g, x, R, an=an))
                except HypothesisNotMet as exc:
                    out.append(_not_met(name, exc, x=x, R=R))
    return out


def cd_summary(an: Analysis, n_functions: int = 20, seed: int = 0) -> dict:
    """Smallest CD residual per variant over a seeded batch of random functions."""
    K = an.pairs.global_min
    consts = cd_constants(an.md, K)
    rng = random.Random(seed)
    worst = {v: None for v in CD_VARIANTS}
    for _ in range(n_functions):
        f = [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(an.g.n)]
        for v in CD_VARIANTS:
            r = min(cd_check(an.md, f, v, constants=consts))
            worst[v] = r if worst[v] is None else min(worst[v], r)
    return {
        "K": K,
        "constants": {
            "K": list(consts.K),
            "K_tilde": list(consts.K_tilde),
            "K_hat": list(consts.K_hat),
            "2K-3": consts.two_K_minus_3,
            "triangle": list(consts.T),
        },
        "empty_neighborhood_convention": any(t == 0 for t in consts.T),
        "min_residual": worst,
        "functions": n_functions,
        "seed": seed,
    }


def full_report(g: WeightedDigraph, scope: str = "edges", n_jobs: int = 1) -> dict:
    """All sections of an analysis as plain Python values (Fractions, floats, lists).

    Serialization lives in the CLI; this function only assembles.
    """
    an = analysis(g, n_jobs)
    kappa = an.pairs.kappa if scope == "all" else {e: an.pairs.kappa[e] for e in g.edges}
    if scope not in ("all", "edges"):
        raise ValueError(f"unknown scope {scope!r}")
    cls = classify(g)
    lab = g.labels
    spec = spectrum(an.md)
    undirected_reduction = cls.undirected and all(h == -1 for h in an.mc.H)
    return {
        "classify": cls.as_dict(),
        "perron": {lab[i]: v for i, v in enumerate(an.md.m)},
        "curvature": {
            "scope": scope,
            "pairs": [{"x": lab[x], "y": lab[y], "kappa": v} for (x, y), v in sorted(kappa.items())],
            "edge_min": an.pairs.edge_min,
            "global_min": an.pairs.global_min,
        },
        "mean_curvature": {
            "H": {lab[i]: v for i, v in enumerate(an.mc.H)},
            "H_reverse": {lab[i]: v for i, v in enumerate(an.mc.Hrev)},
            "undirected_reduction": undirected_reduction,
        },
        "spectrum": {"eigenvalues": list(spec.eigenvalues), "max_residual": max(spec.residuals)},
        "cd": cd_summary(an),
        "verdicts": all_verdicts(g, an),
    }
