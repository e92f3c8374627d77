from __future__ import annotations

from fractions import Fraction as F

import pytest

from corpus import corpus
from digraph_ricci import gen_complete, gen_cycle, gen_undirected
from digraph_ricci.comparisons import (
    FAILS,
    HOLDS,
    NOT_MET,
    VACUOUS,
    all_verdicts,
    analysis,
    check_bonnet_myers,
    check_isoperimetric_ER,
    check_lichnerowicz,
    check_main_theorem,
    full_report,
    volume_constant,
)
from digraph_ricci.errors import HypothesisNotMet


@pytest.mark.parametrize("name", ["K3", "K5", "C5", "R6s1", "R6s2-sym", "petersen-piece"])
def test_nothing_fails(name):
    verdicts = all_verdicts(corpus()[name])
    assert verdicts
    assert not [v for v in verdicts if v.status == FAILS]
    assert {v.status for v in verdicts} <= {HOLDS, VACUOUS, NOT_MET}


def test_lichnerowicz_tight_on_k3():
    v = check_lichnerowicz(gen_complete(3))
    assert v.holds
    assert v.hypotheses["K"] == F(3, 2)
    assert v.lhs == pytest.approx(1.5, abs=1e-9)


def test_lichnerowicz_needs_positive_curvature():
    with pytest.raises(HypothesisNotMet):
        check_lichnerowicz(gen_cycle(5))


def test_bonnet_myers_on_cycle():
    # edges are flat, so only the longer pairs enter; the radius corollary needs K > 0
    verdicts = check_bonnet_myers(gen_cycle(4))
    assert {v.status for v in verdicts if v.theorem == "bonnet-myers"} == {HOLDS}
    assert {v.status for v in verdicts if v.theorem == "inscribed-radius"} == {NOT_MET}


def test_er_admissible_fixtures():
    k3 = gen_complete(3)
    assert check_isoperimetric_ER(k3, 0, 2).holds
    assert check_main_theorem(k3, 0, 2).holds
    k4 = gen_undirected(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    v = check_main_theorem(k4, 0, 1, p=2)
    assert v.holds and v.lhs >= v.rhs - 1e-9


def test_er_hypothesis_guard():
    with pytest.raises(HypothesisNotMet):
        check_main_theorem(gen_cycle(5), 0, 2)
    with pytest.raises(HypothesisNotMet):
        check_isoperimetric_ER(gen_complete(3), 0, 0)


def test_volume_constant_eulerian():
    # unweighted Eulerian: the mean kernel is 1/(2 deg) on each arc direction
    assert volume_constant(analysis(gen_cycle(4)).md) == F(1, 2)
    assert volume_constant(analysis(gen_complete(4)).md) == F(1, 4)


def test_full_report_sections():
    rep = full_report(gen_complete(4))
    assert set(rep) == {"classify", "perron", "curvature", "mean_curvature", "spectrum", "cd", "verdicts"}
    assert rep["curvature"]["edge_min"] == 1
    assert rep["mean_curvature"]["undirected_reduction"] is False
    assert full_report(gen_complete(4), n_jobs=3) == rep
