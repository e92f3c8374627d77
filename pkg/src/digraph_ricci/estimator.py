from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .curvature import curvature_report, mean_curvatures, ricci
from .markov import build_markov
from .validation import check_graph, check_pairs


class DirectedRicciCurvature(BaseEstimator):
    """Estimator-style wrapper around the curvature computation.

    Parameters
    ----------
    scope : {"edges", "all"}
        Which ordered pairs ``fit`` evaluates up front.
    n_jobs : int
        Worker threads for the per-pair solves.

    Attributes
    ----------
    graph_ : WeightedDigraph
    markov_ : MarkovData
    mean_curvatures_ : MeanCurvatures
    kappa_ : dict mapping index pairs to Fractions
    edge_min_, global_min_ : Fraction

    Examples
    --------
    >>> from digraph_ricci import gen_complete
    >>> est = DirectedRicciCurvature().fit(gen_complete(3))
    >>> est.edge_min_
    Fraction(3, 2)
    """

    def __init__(self, scope: str = "edges", n_jobs: int = 1):
        self.scope = scope
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        g = check_graph(X)
        md = build_markov(g)
        rep = curvature_report(g, self.scope, md, self.n_jobs)
        self.graph_ = g
        self.markov_ = md
        self.mean_curvatures_ = mean_curvatures(g, md)
        self.kappa_ = dict(rep.kappa)
        self.edge_min_ = rep.edge_min
        self.global_min_ = rep.global_min
        return self

    def predict(self, pairs) -> np.ndarray:
        """Curvature of each pair (indices or labels), as an object array of Fractions."""
        check_is_fitted(self, "kappa_")
        out = []
        for p in check_pairs(self.graph_, pairs):
            if p not in self.kappa_:
                self.kappa_[p] = ricci(self.graph_, self.markov_, *p)[0]
            out.append(self.kappa_[p])
        return np.array(out, dtype=object)
