from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from corpus import corpus
from digraph_ricci import build_markov, gen_complete, gen_cycle
from digraph_ricci.errors import DomainError
from digraph_ricci.operators import (
    CD_VARIANTS,
    apply_laplacian,
    apply_p_laplacian,
    cd_check,
    cd_constants,
    delta,
    delta_gamma_closed,
    gamma,
    gamma2,
    gamma_closed,
    gcal,
    integration_by_parts_check,
    laplacian_data,
    triangle_fn,
    two_gamma_f_delta_f_closed,
)


def rand_fn(rng, n):
    return [F(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(n)]


def test_laplacian_kills_constants():
    md = build_markov(corpus()["R6s2"])
    assert apply_laplacian(laplacian_data(md), [F(3)] * 6) == (0,) * 6
    assert delta(md, [1, 0, 0, 0, 0, 0])[0] == -1


def test_p_laplacian_two_matches_laplacian():
    md = build_markov(corpus()["R6s1"])
    f = rand_fn(random.Random(0), 6)
    assert apply_p_laplacian(md, f, 2) == apply_laplacian(laplacian_data(md), f)
    three = apply_p_laplacian(md, f, 3)
    assert all(isinstance(v, F) for v in three)
    approx = apply_p_laplacian(md, f, 2.5)
    assert all(isinstance(v, float) for v in approx)


@pytest.mark.parametrize("name", ["K5", "C6", "R6s1", "R6s2-sym", "petersen-piece"])
def test_closed_forms(name):
    md = build_markov(corpus()[name])
    rng = random.Random(name)
    for _ in range(5):
        f = rand_fn(rng, md.n)
        g1 = gamma(md, f, f)
        assert g1 == gamma_closed(md, f)
        dg = delta(md, g1)
        assert dg == delta_gamma_closed(md, f)
        df = delta(md, f)
        assert tuple(2 * v for v in gamma(md, f, df)) == two_gamma_f_delta_f_closed(md, f)
        assert gamma2(md, f, f) == tuple(a - b + c * c / 2 for a, b, c in zip(gcal(md, f), g1, df))


def test_integration_by_parts():
    md = build_markov(corpus()["R6s2"])
    rng = random.Random(5)
    for _ in range(10):
        omega = rng.sample(range(6), rng.randint(1, 6))
        lhs, rhs = integration_by_parts_check(md, omega, rand_fn(rng, 6), rand_fn(rng, 6))
        assert lhs == rhs
    with pytest.raises(DomainError):
        integration_by_parts_check(md, [], [0] * 6, [0] * 6)


def test_triangles_and_constants():
    md = build_markov(gen_complete(4))
    # the underlying undirected graph of K4 is complete
    assert triangle_fn(md) == (2, 2, 2, 2)
    c = cd_constants(build_markov(gen_cycle(4)))
    # no triangles on a 4-cycle, so the inner set is empty everywhere
    assert c.T == (0,) * 4 and c.K1 == (0,) * 4
    assert c.K_tilde == (0,) * 4  # P(y, x) = 1/2 on the cycle
    assert c.K_hat is None


@pytest.mark.parametrize("name", ["K3", "K6", "C5", "R6s1", "R6s2", "square"])
def test_cd_residuals_nonnegative(name):
    g = corpus()[name]
    md = build_markov(g)
    consts = cd_constants(md, K=F(0))
    rng = random.Random(name)
    for _ in range(10):
        f = rand_fn(rng, g.n)
        for variant in CD_VARIANTS:
            assert min(cd_check(md, f, variant, constants=consts)) >= 0


def test_cd_variant_errors():
    md = build_markov(gen_cycle(3))
    with pytest.raises(DomainError):
        cd_check(md, [0, 1, 2], "K_hat")
    with pytest.raises(DomainError):
        cd_check(md, [0, 1, 2], "bogus")
