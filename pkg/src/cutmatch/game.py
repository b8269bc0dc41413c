"""The cut-matching game loop and the search over alpha built on it."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from cutmatch.cut_player import (
    WalkMatrix,
    apply_matching_exact,
    cut_player,
    is_mixing,
    potential,
)
from cutmatch.graph import Cut, DiGraph, expansion, find_zero_expansion_cut
from cutmatch.matching_player import (
    DirectedPerfectMatching,
    arc_capacity,
    find_matching_or_cut,
)

log = logging.getLogger(__name__)

EXACT = "exact"
PROJECTED = "projected"

CUT = "cut"
EXPANDER = "expander"
INCONCLUSIVE = "inconclusive"


class OddVertexCountError(ValueError):
    def __init__(self, n: int):
        super().__init__(
            f"the cut-matching game needs an even number of vertices (got n={n}); "
            "odd instances are rejected rather than padded"
        )


def default_round_cap(n: int) -> int:
    return max(1, math.ceil(10 * math.log2(n) ** 2))


def default_threshold(n: int) -> Fraction:
    return Fraction(1, 4 * n * n)


@dataclass(frozen=True)
class GameConfig:
    alpha: Fraction
    mode: str = EXACT
    round_cap: int | None = None
    seed: int = 0
    potential_threshold: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.mode not in (EXACT, PROJECTED):
            raise ValueError(f"mode must be 'exact' or 'projected', got {self.mode!r}")
        if self.round_cap is not None and self.round_cap < 1:
            raise ValueError("round_cap must be at least 1")
        if self.potential_threshold is not None:
            object.__setattr__(self, "potential_threshold", Fraction(self.potential_threshold))
            if self.potential_threshold <= 0:
                raise ValueError("potential_threshold must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def resolved(self, n: int) -> "GameConfig":
        """Fill in the n-dependent defaults."""
        return replace(
            self,
            round_cap=self.round_cap or default_round_cap(n),
            potential_threshold=self.potential_threshold or default_threshold(n),
        )


@dataclass(frozen=True)
class CutCertificate:
    cut: Cut
    expansion: Fraction
    alpha_at_failure: Fraction


@dataclass(frozen=True)
class ExpanderCertificate:
    """Embedded matching sequence; its union is certified to expand by 1/2 when mixing.

    ``implied_lower_bound`` bounds the expansion of every cut of ``G`` from
    below, provided the union of matchings expands by 1/2. That holds when
    ``final_psi`` is present and below the threshold; a ``heuristic``
    certificate carries no such evidence until re-verified.
    """

    n: int
    alpha: Fraction
    matchings: tuple[DirectedPerfectMatching, ...]
    congestion_bound: Fraction
    final_psi: Fraction | None
    heuristic: bool
    implied_lower_bound: Fraction

    @property
    def rounds(self) -> int:
        return len(self.matchings)

    @classmethod
    def build(cls, n, alpha, matchings, final_psi, heuristic) -> "ExpanderCertificate":
        bound = Fraction(2 * len(matchings) * arc_capacity(alpha))
        return cls(
            n=n,
            alpha=Fraction(alpha),
            matchings=tuple(matchings),
            congestion_bound=bound,
            final_psi=final_psi,
            heuristic=heuristic,
            implied_lower_bound=Fraction(1, 2) / bound,
        )


@dataclass(frozen=True)
class RoundRecord:
    round: int
    bisection: tuple[int, ...]
    flow_values: tuple[int, ...]
    psi: Fraction | None


@dataclass
class GameResult:
    status: str
    config: GameConfig
    cut: CutCertificate | None = None
    expander: ExpanderCertificate | None = None
    matchings: list[DirectedPerfectMatching] = field(default_factory=list)
    trace: list[RoundRecord] = field(default_factory=list)
    initial_psi: Fraction | None = None
    maxflow_calls: int = 0

    @property
    def rounds(self) -> int:
        """Number of successful (matching) rounds."""
        return len(self.matchings)

    @property
    def certificate(self):
        return self.cut if self.status == CUT else self.expander


def play_game(G: DiGraph, config: GameConfig) -> GameResult:
    """Alternate cut and matching players until a cut appears or the walk mixes.

    In exact mode the game ends with an expander certificate as soon as the
    potential reaches the threshold, and is ``inconclusive`` if the round cap
    comes first. In projected mode the cap is the only expander exit and the
    certificate is flagged heuristic.
    """
    n = G.n
    if n % 2 or n < 2:
        raise OddVertexCountError(n)
    cfg = config.resolved(n)
    rng = np.random.default_rng(cfg.seed)
    exact = cfg.mode == EXACT

    result = GameResult(status=INCONCLUSIVE, config=cfg)
    P = WalkMatrix.identity(n) if exact else None
    if exact:
        result.initial_psi = potential(P)

    for rnd in range(1, cfg.round_cap + 1):
        bisection, _ = cut_player(result.matchings, n, rng)
        outcome = find_matching_or_cut(G, bisection.S, cfg.alpha)
        result.maxflow_calls += outcome.maxflow_calls
        if outcome.cut is not None:
            result.trace.append(RoundRecord(rnd, bisection.S.side, outcome.flow_values, None))
            result.status = CUT
            result.cut = CutCertificate(outcome.cut, outcome.cut_expansion, cfg.alpha)
            log.debug("round %d: cut with expansion %s", rnd, outcome.cut_expansion)
            return result
        M = outcome.matching
        result.matchings.append(M)
        psi = None
        if exact:
            P = apply_matching_exact(P, M)
            psi = potential(P)
        result.trace.append(RoundRecord(rnd, bisection.S.side, outcome.flow_values, psi))
        if exact and psi <= cfg.potential_threshold:
            if not is_mixing(P):
                raise AssertionError("potential below threshold but walk not mixing")
            result.status = EXPANDER
            result.expander = ExpanderCertificate.build(n, cfg.alpha, result.matchings, psi, False)
            log.debug("round %d: mixed, psi=%s", rnd, psi)
            return result

    if not exact:
        result.status = EXPANDER
        result.expander = ExpanderCertificate.build(n, cfg.alpha, result.matchings, None, True)
    return result


def alpha_grid(n: int, m: int) -> list[Fraction]:
    """``2/n, 4/n, ...`` up to the first value at least ``m``."""
    grid = [Fraction(2, n)]
    while grid[-1] < max(m, 1):
        grid.append(grid[-1] * 2)
    return grid


@dataclass
class Probe:
    index: int
    alpha: Fraction
    seed: int
    result: GameResult


@dataclass
class ApproximationResult:
    best_cut: CutCertificate
    best_lower_bound: ExpanderCertificate | None
    probes: list[Probe] = field(default_factory=list)
    zero_cut: bool = False

    @property
    def ratio(self) -> Fraction | None:
        """Cut expansion over certified lower bound, when both exist."""
        if self.best_lower_bound is None:
            return None
        return self.best_cut.expansion / self.best_lower_bound.implied_lower_bound

    @property
    def maxflow_calls(self) -> int:
        return sum(p.result.maxflow_calls for p in self.probes)


def approximate_sparsest_cut(
    G: DiGraph,
    seed: int = 0,
    mode: str = EXACT,
    round_cap: int | None = None,
) -> ApproximationResult:
    """Binary search over a doubling grid of alpha values.

    Large alpha tends to end in a cut, small alpha in an expander
    certificate; the search narrows onto the boundary. Returns the smallest
    cut expansion seen and the largest certified lower bound.
    """
    n = G.n
    if n % 2 or n < 2:
        raise OddVertexCountError(n)
    zero = find_zero_expansion_cut(G)
    if zero is not None:
        cert = CutCertificate(zero, expansion(G, zero), Fraction(0))
        return ApproximationResult(cert, None, zero_cut=True)

    grid = alpha_grid(n, G.m)
    probes: list[Probe] = []
    lo, hi = -1, len(grid)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probe_seed = seed ^ len(probes)
        cfg = GameConfig(grid[mid], mode=mode, round_cap=round_cap, seed=probe_seed)
        res = play_game(G, cfg)
        probes.append(Probe(len(probes), grid[mid], probe_seed, res))
        log.info("probe alpha=%s -> %s after %d rounds", grid[mid], res.status, res.rounds)
        if res.status == CUT:
            hi = mid
        else:
            lo = mid

    cuts = [p.result.cut for p in probes if p.result.cut is not None]
    if cuts:
        best_cut = min(cuts, key=lambda c: (c.expansion, c.cut.side))
    else:
        best_cut = _best_bisection_cut(G, probes, grid[-1])
    lower = [
        p.result.expander
        for p in probes
        if p.result.expander is not None and not p.result.expander.heuristic
    ]
    best_lower = max(lower, key=lambda e: e.implied_lower_bound, default=None)
    return ApproximationResult(best_cut, best_lower, probes)


def _best_bisection_cut(G: DiGraph, probes: Sequence[Probe], alpha_top: Fraction) -> CutCertificate:
    """Fallback when every probe certified an expander: best proposed bisection side."""
    best = None
    for p in probes:
        for rec in p.result.trace:
            S = Cut(G.n, rec.bisection)
            for side in (S, S.complement()):
                key = (expansion(G, side), side.side)
                if best is None or key < best:
                    best = key
    exp, side = best
    return CutCertificate(Cut(G.n, side), exp, alpha_top)
