"""Acceptance checks, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion at the end of the session output.
"""

from __future__ import annotations

import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from corpus import corpus, small_corpus, undirected_fixtures
from digraph_ricci import (
    build_markov,
    classify,
    distances,
    gen_complete,
    gen_cycle,
    gen_random,
    gen_undirected,
    inscribed_radius,
    lower_bound_edge,
    lower_bound_regular,
    mean_curvatures,
    ricci,
    ricci_via_limit,
    to_edge_list,
    upper_bound,
    variant_curvature,
    wasserstein,
    wasserstein_bruteforce,
)
from digraph_ricci.comparisons import (
    FAILS,
    HOLDS,
    NOT_MET,
    all_verdicts,
    analysis,
    check_isoperimetric_ER,
    check_lichnerowicz,
    check_main_theorem,
)
from digraph_ricci.curvature import VARIANT_KINDS
from digraph_ricci.markov import ProbMeasure
from digraph_ricci.operators import cd_check, cd_constants, gamma, gamma2, gcal, delta, integration_by_parts_check
from digraph_ricci.product import ProductSpec, cartesian_product, check_product_curvature, check_product_identities
from digraph_ricci.spectral import cheeger_bound, coarea_check, dirichlet_poincare, spectrum


def rand_fn(rng: random.Random, n: int) -> list[F]:
    return [F(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(n)]


def rand_measure(rng: random.Random, n: int) -> ProbMeasure:
    support = rng.sample(range(n), rng.randint(1, n))
    raw = [rng.randint(1, 9) for _ in support]
    w = [F(0)] * n
    for v, r in zip(support, raw):
        w[v] = F(r, sum(raw))
    return ProbMeasure(tuple(w))


def ordered_pairs(n):
    return [(x, y) for x in range(n) for y in range(n) if x != y]


@pytest.mark.criterion(1, "curvature of the directed complete graphs")
def test_criterion_01_complete_graphs():
    k3 = gen_complete(3)
    assert [ricci(k3, None, *e)[0] for e in k3.edges] == [F(3, 2)] * 3
    k4 = gen_complete(4)
    assert ricci(k4, None, 0, 1)[0] == 1 and ricci(k4, None, 0, 2)[0] == F(3, 2)
    k5 = gen_complete(5)
    assert ricci(k5, None, 0, 1)[0] == 1
    assert ricci(k5, None, 0, 2)[0] == ricci(k5, None, 0, 3)[0] == F(7, 6)
    for n in (6, 8):
        g = gen_complete(n)
        big = 1 + F(1, 2 * (n - 2))
        assert ricci(g, None, 0, 1)[0] == 1
        assert ricci(g, None, 0, 2)[0] == ricci(g, None, 0, n - 2)[0] == big
        for i in range(3, n - 2):
            assert ricci(g, None, 0, i)[0] == 1


@pytest.mark.criterion(2, "mean curvatures of complete graphs and cycles")
def test_criterion_02_mean_curvatures():
    for n in (3, 4, 5, 6, 8):
        mc = mean_curvatures(gen_complete(n))
        want = -(1 + F(1, 2 * (n - 2)))
        assert all(h == want for h in mc.H) and all(h == want for h in mc.Hrev)
    for n in (4, 5, 6, 8):
        assert all(h == F(-n, 2) for h in mean_curvatures(gen_cycle(n)).H)


@pytest.mark.criterion(3, "directed cycles are flat on edges and nonnegative everywhere")
def test_criterion_03_cycles():
    for n in (4, 5, 6, 8):
        g = gen_cycle(n)
        md = build_markov(g)
        assert all(ricci(g, md, *e)[0] == 0 for e in g.edges)
        assert all(ricci(g, md, *p)[0] >= 0 for p in ordered_pairs(n))


LIMIT_GRAPHS = ["K3", "K4", "K5", "K6", "C4", "C5", "C6", "R6s1", "R6s2", "R6s1-sym", "R6s2-sym"]


@pytest.mark.criterion(4, "limit-free curvature equals the stabilized limit")
@pytest.mark.parametrize("name", LIMIT_GRAPHS)
def test_criterion_04_limit_free(name):
    g = corpus()[name]
    md = build_markov(g)
    for x, y in ordered_pairs(g.n):
        assert ricci(g, md, x, y)[0] == ricci_via_limit(g, md, x, y)


@pytest.mark.criterion(5, "transport LP equals the brute-force oracle with an exact duality certificate")
@pytest.mark.parametrize("name", sorted(small_corpus(6)))
def test_criterion_05_transport(name):
    g = corpus()[name]
    d = distances(g)
    rng = random.Random(f"transport-{name}")
    for _ in range(50):
        a, b = rand_measure(rng, g.n), rand_measure(rng, g.n)
        res = wasserstein(d, a, b)
        assert res.cost == wasserstein_bruteforce(d, a, b)
        rows, cols = res.coupling.marginals()
        assert rows == a.weights and cols == b.weights
        primal = sum(res.coupling.pi[i][j] * d[i, j] for i in range(g.n) for j in range(g.n))
        f = res.dual_potential
        dual = sum(f[i] * (b[i] - a[i]) for i in range(g.n))
        assert primal == dual == res.cost
        assert all(f[j] - f[i] <= d[i, j] for i in range(g.n) for j in range(g.n))


PRODUCT_WEIGHTS = [(F(1), F(1)), (F(1), F(3)), (F(2, 3), F(5, 7))]


@pytest.mark.criterion(6, "product curvature matches the mixture formula")
@pytest.mark.parametrize("ab", PRODUCT_WEIGHTS, ids=["1-1", "1-3", "2/3-5/7"])
@pytest.mark.parametrize("factors", ["C3xC4", "K3xC3"])
def test_criterion_06_products(factors, ab):
    g, h = (gen_cycle(3), gen_cycle(4)) if factors == "C3xC4" else (gen_complete(3), gen_cycle(3))
    spec = ProductSpec(g, h, *ab)
    ident = check_product_identities(spec)
    assert ident.holds, ident.failure
    G = cartesian_product(spec)
    bad = [c for c in (check_product_curvature(spec, X, Y) for X, Y in ordered_pairs(G.n)) if not c.holds]
    assert not bad


@pytest.mark.criterion(7, "edge bounds sandwich the curvature")
@pytest.mark.parametrize("name", sorted(corpus()))
def test_criterion_07_bounds(name):
    g = corpus()[name]
    md = build_markov(g)
    regular = classify(g).regular is not None
    if name[0] in "KC" and not name.startswith("K4-"):
        assert regular
    for e in g.edges:
        k = ricci(g, md, *e)[0]
        ub = upper_bound(g, md, e)
        assert lower_bound_edge(g, md, e) <= k <= ub.bound <= ub.simple == 1 + md.Pmean[e[1]][e[0]]
        if regular:
            assert lower_bound_regular(g, md, e) <= k


@pytest.mark.criterion(8, "curvature-dimension inequalities and operator identities")
@pytest.mark.parametrize("name", sorted(corpus()))
def test_criterion_08_cd(name):
    g = corpus()[name]
    md = build_markov(g)
    consts = cd_constants(md)
    rng = random.Random(f"cd-{name}")
    for _ in range(200):
        f = rand_fn(rng, g.n)
        for variant in ("K", "K_tilde"):
            assert min(cd_check(md, f, variant, constants=consts)) >= 0
    for _ in range(20):
        f = rand_fn(rng, g.n)
        g1, df = gamma(md, f, f), delta(md, f)
        assert gamma2(md, f, f) == tuple(a - b + c * c / 2 for a, b, c in zip(gcal(md, f), g1, df))
    subsets = [rng.sample(range(g.n), rng.randint(1, g.n)) for _ in range(20)]
    for i in range(100):
        lhs, rhs = integration_by_parts_check(md, subsets[i % 20], rand_fn(rng, g.n), rand_fn(rng, g.n))
        assert lhs == rhs


@pytest.mark.criterion(9, "Lichnerowicz eigenvalue bound")
def test_criterion_09_lichnerowicz():
    v = check_lichnerowicz(gen_complete(3))
    assert v.hypotheses["K"] == F(3, 2)
    assert abs(v.lhs - 1.5) <= 1e-9
    for n in (4, 5, 6):
        g = gen_complete(n)
        K = analysis(g).pairs.global_min
        assert K > 0
        assert spectrum(build_markov(g)).lambda1 >= float(K) - 1e-9


@pytest.mark.criterion(10, "Bonnet-Myers distance bound and inscribed radius")
@pytest.mark.parametrize("name", sorted(corpus()))
def test_criterion_10_bonnet_myers(name):
    g = corpus()[name]
    an = analysis(g)
    for (x, y), k in an.pairs.kappa.items():
        if k > 0:
            assert an.dm.d[x][y] <= an.mc.Hmix[x][y] / k
    verdicts = [v for v in all_verdicts(g, an) if v.theorem in ("bonnet-myers", "inscribed-radius")]
    assert not [v for v in verdicts if v.status == FAILS]
    if name.startswith("K") and not name.startswith("K4-"):
        radius = [v for v in verdicts if v.theorem == "inscribed-radius"]
        assert radius and all(v.status == HOLDS for v in radius)
        for v in radius:
            assert inscribed_radius(g, v.context["x"]) <= v.lhs


COMPARISON_THEOREMS = {"volume-ratio", "volume-kernel-mass", "volume-sphere", "volume-ball", "laplacian-comparison"}


@pytest.mark.criterion(11, "volume and Laplacian comparisons")
@pytest.mark.parametrize("name", sorted(corpus()))
def test_criterion_11_volume_laplacian(name):
    verdicts = [v for v in all_verdicts(corpus()[name]) if v.theorem in COMPARISON_THEOREMS]
    admissible = [v for v in verdicts if v.status != NOT_MET]
    assert admissible
    assert all(v.status == HOLDS for v in admissible)
    assert any(v.theorem == "volume-kernel-mass" for v in admissible) or name.startswith("C")


def _random_instances():
    rng = random.Random(2024)
    out = []
    for i in range(10):
        n = rng.randint(5, 10)
        g = gen_random(n, 100 + i)
        k = rng.randint(1, min(8, n - 1))
        out.append((g, sorted(rng.sample(range(n), k))))
    return out


@pytest.mark.criterion(12, "Dirichlet Cheeger bound, co-area, and the exhaustion bound")
def test_criterion_12_cheeger():
    for g, subset in _random_instances():
        md = build_markov(g)
        for p in (1.5, 2.0, 3.0):
            r = dirichlet_poincare(md, subset, p)
            assert r.value >= cheeger_bound(r.isoperimetric, p) - 1e-9
    rng = random.Random(12)
    md = build_markov(corpus()["R6s2"])
    for _ in range(100):
        lhs, rhs = coarea_check(md, rand_fn(rng, md.n))
        assert lhs == rhs
    k3 = gen_complete(3)
    k4 = gen_undirected(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    for g, R in ((k3, 2), (k4, 1)):
        an = analysis(g)
        assert an.K_from(0) * R + an.mc.H[0] > 0
        assert check_isoperimetric_ER(g, 0, R, an).holds
        v = check_main_theorem(g, 0, R, 2, an)
        assert v.lhs >= v.rhs - 1e-9


@pytest.mark.criterion(13, "undirected graphs reduce to the classical picture")
@pytest.mark.parametrize("name", sorted(undirected_fixtures()))
def test_criterion_13_undirected(name):
    g = undirected_fixtures()[name]
    mc = mean_curvatures(g)
    assert set(mc.H) == set(mc.Hrev) == {-1}
    assert all(mc.Hmix[x][y] == 2 for x, y in ordered_pairs(g.n))
    md = build_markov(g)
    for x, y in ordered_pairs(g.n):
        k = ricci(g, md, x, y)[0]
        assert all(variant_curvature(g, x, y, kind) == k for kind in VARIANT_KINDS)


@pytest.mark.criterion(14, "analyze output is byte-identical across runs and thread counts")
def test_criterion_14_determinism(tmp_path):
    for name in ("K5", "R6s1"):
        src = tmp_path / f"{name}.tsv"
        src.write_text(to_edge_list(corpus()[name]))
        outs = set()
        for jobs in ("1", "4", "1", "4"):
            proc = subprocess.run(
                [sys.executable, "-m", "digraph_ricci", "analyze", str(src), "--scope", "all", "--jobs", jobs],
                capture_output=True,
            )
            assert proc.returncode == 0, proc.stderr
            outs.add(proc.stdout)
        assert len(outs) == 1
