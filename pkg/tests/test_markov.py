from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digraph_ricci import averaging_apply, build_markov, gen_complete, gen_cycle, gen_random, lazy_measure
from digraph_ricci.errors import DomainError
from digraph_ricci.markov import ProbMeasure


def test_cycle_is_uniform():
    md = build_markov(gen_cycle(4))
    assert md.m == (F(1, 4),) * 4
    assert lazy_measure(md, 0, F(1, 2)).weights == (F(1, 2), F(1, 4), 0, F(1, 4))


def test_complete_k3_mean_kernel():
    md = build_markov(gen_complete(3))
    # every vertex has one out- and one in-neighbour; the mean kernel splits evenly
    assert md.Pmean[0] == (0, F(1, 2), F(1, 2))


def test_measure_validation():
    with pytest.raises(DomainError):
        ProbMeasure((F(1, 2), F(1, 3)))
    with pytest.raises(DomainError):
        lazy_measure(build_markov(gen_cycle(3)), 0, F(3, 2))


def test_mix_and_dirac():
    a, b = ProbMeasure.dirac(3, 0), ProbMeasure.dirac(3, 2)
    assert a.mix(b, F(1, 4)).weights == (F(3, 4), 0, F(1, 4))
    assert a.support == (0,)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10_000))
def test_stationary_and_kernels(n, seed):
    md = build_markov(gen_random(n, seed))
    assert sum(md.m) == 1 and all(v > 0 for v in md.m)
    for y in range(n):
        assert sum(md.m[x] * md.P[x][y] for x in range(n)) == md.m[y]
    for x in range(n):
        assert sum(md.P[x]) == sum(md.Prev[x]) == sum(md.Pmean[x]) == 1
        for y in range(n):
            # reversibility of the mean kernel
            assert md.m[x] * md.Pmean[x][y] == md.m[y] * md.Pmean[y][x] == md.mxy[x][y]


def test_averaging_apply_constant():
    md = build_markov(gen_random(5, 7))
    assert averaging_apply(md, F(1, 3), [F(2)] * 5) == (F(2),) * 5
