"""Directed sparsest cut through the cut-matching game."""

from cutmatch.certify import (
    brute_force_sparsest_cut,
    verify_cut_certificate,
    verify_double_stochastic,
    verify_expander_certificate,
)
from cutmatch.estimator import DirectedSparsestCut
from cutmatch.game import (
    CutCertificate,
    ExpanderCertificate,
    GameConfig,
    GameResult,
    approximate_sparsest_cut,
    play_game,
)
from cutmatch.graph import (
    Cut,
    DiGraph,
    expansion,
    find_zero_expansion_cut,
    out_boundary,
    parse_graph,
    serialize_graph,
    union_of_matchings,
)

__version__ = "0.1.0"

__all__ = [
    "Cut",
    "CutCertificate",
    "DiGraph",
    "DirectedSparsestCut",
    "ExpanderCertificate",
    "GameConfig",
    "GameResult",
    "approximate_sparsest_cut",
    "brute_force_sparsest_cut",
    "expansion",
    "find_zero_expansion_cut",
    "out_boundary",
    "parse_graph",
    "play_game",
    "serialize_graph",
    "union_of_matchings",
    "verify_cut_certificate",
    "verify_double_stochastic",
    "verify_expander_certificate",
]
