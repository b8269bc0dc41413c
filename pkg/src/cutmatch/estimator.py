"""Scikit-learn style front end for the solver."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from cutmatch.document import approximation_document, game_document, zero_cut_document
from cutmatch.game import (
    CUT,
    EXACT,
    PROJECTED,
    GameConfig,
    OddVertexCountError,
    approximate_sparsest_cut,
    play_game,
)
from cutmatch.graph import expansion, find_zero_expansion_cut
from cutmatch.validation import check_alpha, check_digraph, check_seed


class DirectedSparsestCut(ClusterMixin, BaseEstimator):
    """Find a sparse directed cut, or certify that none exists at a given level.

    Parameters
    ----------
    alpha : "auto" or rational, default="auto"
        Target expansion. A fixed value plays one game and ends with either a
        cut of expansion at most ``alpha`` or an embedded expander. ``"auto"``
        searches over ``alpha`` and keeps the best cut and lower bound.
    mode : {"exact", "projected"}, default="exact"
        ``"exact"`` tracks the walk matrix exactly and stops once it mixes.
        ``"projected"`` only keeps projections and runs to the round cap.
    round_cap : int or None, default=None
        Rounds per game; ``None`` means ``ceil(10 * log2(n)**2)``.
    random_state : int, default=0
        Seed for the random directions. Identical seeds give identical output.

    Attributes
    ----------
    labels_ : ndarray of shape (n_vertices,)
        1 for vertices on the reported cut side ``S``, 0 otherwise.
    cut_ : tuple of int
        Sorted vertices of ``S``. Expansion counts arcs leaving ``S``.
    expansion_ : Fraction
    lower_bound_ : Fraction or None
        Certified lower bound on the expansion of every cut, if any.
    status_ : str
        ``"cut"``, ``"expander"`` or ``"inconclusive"``.
    result_ : GameResult or ApproximationResult
    n_rounds_, n_maxflow_calls_ : int
    """

    def __init__(self, alpha="auto", mode=EXACT, round_cap=None, random_state=0):
        self.alpha = alpha
        self.mode = mode
        self.round_cap = round_cap
        self.random_state = random_state

    def fit(self, X, y=None, n_vertices=None):
        G = check_digraph(X, n_vertices)
        alpha = check_alpha(self.alpha)
        seed = check_seed(self.random_state)
        if self.mode not in (EXACT, PROJECTED):
            raise ValueError(f"mode must be 'exact' or 'projected', got {self.mode!r}")
        if self.round_cap is not None and int(self.round_cap) < 1:
            raise ValueError("round_cap must be a positive integer")
        if G.n % 2 or G.n < 2:
            raise OddVertexCountError(G.n)

        self.graph_ = G
        self.lower_bound_ = None
        self.n_rounds_ = 0
        self.n_maxflow_calls_ = 0
        zero = find_zero_expansion_cut(G)
        if alpha is None:
            res = approximate_sparsest_cut(G, seed=seed, mode=self.mode, round_cap=self.round_cap)
            self.result_ = res
            self.status_ = CUT
            cut = res.best_cut.cut
            self.expansion_ = res.best_cut.expansion
            if res.best_lower_bound is not None:
                self.lower_bound_ = res.best_lower_bound.implied_lower_bound
            self.n_rounds_ = sum(p.result.rounds for p in res.probes)
            self.n_maxflow_calls_ = res.maxflow_calls
            self._document = approximation_document(G, res, self.mode, seed, self.round_cap)
        elif zero is not None:
            self.result_ = None
            self.status_ = CUT
            cut = zero
            self.expansion_ = expansion(G, zero)
            self._document = zero_cut_document(G, zero, alpha, self.mode, seed, self.round_cap)
        else:
            res = play_game(G, GameConfig(alpha, mode=self.mode, round_cap=self.round_cap, seed=seed))
            self.result_ = res
            self.status_ = res.status
            self.n_rounds_ = res.rounds
            self.n_maxflow_calls_ = res.maxflow_calls
            self._document = game_document(G, res)
            if res.cut is not None:
                cut = res.cut.cut
                self.expansion_ = res.cut.expansion
            else:
                cut = None
                self.expansion_ = None
                if res.expander is not None and not res.expander.heuristic:
                    self.lower_bound_ = res.expander.implied_lower_bound

        self.labels_ = np.zeros(G.n, dtype=np.int64)
        if cut is not None:
            self.labels_[list(cut.side)] = 1
            self.cut_ = cut.side
        else:
            self.cut_ = None
        return self

    def certificate_document(self) -> dict:
        """JSON-ready certificate for the last fit (same schema as the CLI writes)."""
        check_is_fitted(self, "graph_")
        return self._document
