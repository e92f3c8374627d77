from __future__ import annotations

import random
from fractions import Fraction as F

import numpy as np
import pytest

from corpus import corpus
from digraph_ricci import build_markov, gen_complete, gen_cycle
from digraph_ricci.errors import DomainError
from digraph_ricci.spectral import (
    amghibech_check,
    boundary_measure,
    cheeger_bound,
    coarea_check,
    coarea_lower_bound_check,
    dirichlet_isoperimetric,
    dirichlet_poincare,
    rayleigh_p,
    spectrum,
    symmetrized_laplacian,
)


def test_k3_spectrum():
    s = spectrum(build_markov(gen_complete(3)))
    assert np.allclose(s.eigenvalues, [0, 1.5, 1.5])
    assert s.lambda1 == pytest.approx(1.5)
    assert max(s.residuals) < 1e-12


def test_cycle_spectrum_matches_cosines():
    n = 6
    s = spectrum(build_markov(gen_cycle(n)))
    want = sorted(1 - np.cos(2 * np.pi * k / n) for k in range(n))
    assert np.allclose(s.eigenvalues, want)


def test_symmetrized_is_symmetric():
    S = symmetrized_laplacian(build_markov(corpus()["R6s1"]))
    assert np.allclose(S, S.T)


def test_isoperimetric_c4():
    md = build_markov(gen_cycle(4))
    iso, omega = dirichlet_isoperimetric(md, [1, 2])
    assert iso == F(1, 2)
    assert boundary_measure(md, omega) / sum(md.m[v] for v in omega) == iso


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_dirichlet_c4(p):
    r = dirichlet_poincare(build_markov(gen_cycle(4)), [1, 2], p)
    assert r.value == pytest.approx(0.5, abs=1e-6)
    assert r.value >= r.cheeger - 1e-9
    assert r.minimizer[0] == r.minimizer[3] == 0


def test_rayleigh_at_minimizer():
    md = build_markov(corpus()["R6s2"])
    r = dirichlet_poincare(md, [0, 2, 3], 3)
    assert rayleigh_p(md, r.minimizer, 3) == pytest.approx(r.value, rel=1e-6)


def test_cheeger_bound_formula():
    assert cheeger_bound(F(1, 2), 2) == pytest.approx(2 / 4 * 0.25)


def test_subset_validation():
    md = build_markov(gen_cycle(4))
    with pytest.raises(DomainError):
        dirichlet_poincare(md, [], 2)
    with pytest.raises(DomainError):
        dirichlet_poincare(md, [0, 1, 2, 3], 2)


def test_coarea():
    md = build_markov(corpus()["R6s1"])
    rng = random.Random(1)
    for _ in range(10):
        f = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(6)]
        lhs, rhs = coarea_check(md, f)
        assert lhs == rhs
        g = [abs(v) if i in (0, 1, 2) else 0 for i, v in enumerate(f)]
        big, small = coarea_lower_bound_check(md, [0, 1, 2], g)
        assert big >= small


def test_amghibech():
    rng = random.Random(2)
    for _ in range(200):
        p, a, b = rng.choice([1.5, 2, 3, 4.5]), rng.uniform(0, 5), rng.uniform(0, 5)
        small, big = amghibech_check(p, a, b)
        assert big >= small - 1e-12
