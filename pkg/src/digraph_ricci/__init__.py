"""Exact Ricci curvature for strongly connected weighted digraphs."""

__version__ = "0.1.0"

from .curvature import (
    CurvatureReport,
    MeanCurvatures,
    curvature_report,
    kappa_eps,
    lower_bound_edge,
    lower_bound_general,
    lower_bound_regular,
    mean_curvatures,
    ricci,
    ricci_via_limit,
    upper_bound,
    variant_curvature,
)
from .digraph import (
    DistanceMatrix,
    WeightedDigraph,
    classify,
    distances,
    from_edge_list,
    from_edges,
    from_matrix,
    gen_complete,
    gen_cycle,
    gen_random,
    gen_undirected,
    inscribed_radius,
    neighborhoods,
    to_edge_list,
)
from .errors import *  # noqa: F401,F403
from .exactnum import Rational, solve_linear_system, solve_lp
from .markov import MarkovData, ProbMeasure, averaging_apply, build_markov, lazy_measure
from .transport import Coupling, TransportResult, wasserstein, wasserstein_bruteforce



def __getattr__(name):
    # sklearn is slow to import and only the estimator needs it
    if name == "DirectedRicciCurvature":
        from .estimator import DirectedRicciCurvature

        return DirectedRicciCurvature
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "CurvatureReport",
    "Coupling",
    "DirectedRicciCurvature",
    "DistanceMatrix",
    "MarkovData",
    "MeanCurvatures",
    "ProbMeasure",
    "Rational",
    "TransportResult",
    "WeightedDigraph",
    "averaging_apply",
    "build_markov",
    "classify",
    "curvature_report",
    "distances",
    "from_edge_list",
    "from_edges",
    "from_matrix",
    "gen_complete",
    "gen_cycle",
    "gen_random",
    "gen_undirected",
    "inscribed_radius",
    "kappa_eps",
    "lazy_measure",
    "lower_bound_edge",
    "lower_bound_general",
    "lower_bound_regular",
    "mean_curvatures",
    "neighborhoods",
    "ricci",
    "ricci_via_limit",
    "solve_linear_system",
    "solve_lp",
    "to_edge_list",
    "upper_bound",
    "variant_curvature",
    "wasserstein",
    "wasserstein_bruteforce",
]
