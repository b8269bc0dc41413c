"""Instance generators and a small benchmark harness."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from cutmatch.certify import brute_force_sparsest_cut
from cutmatch.game import EXACT, GameConfig, approximate_sparsest_cut, play_game
from cutmatch.graph import DiGraph

ORACLE_BENCH_MAX_N = 14


def bidirected_complete(n: int) -> DiGraph:
    return DiGraph(n, tuple((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n: int) -> DiGraph:
    return DiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def random_strongly_connected(n: int, m: int, seed: int) -> DiGraph:
    """Hamiltonian cycle on a random vertex order plus ``m - n`` random arcs."""
    if m < n:
        raise ValueError("need m >= n for a spanning cycle")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    arcs = [(int(order[i]), int(order[(i + 1) % n])) for i in range(n)]
    while len(arcs) < m:
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u != v:
            arcs.append((u, v))
    return DiGraph(n, tuple(arcs))


FAMILIES = {
    "complete": lambda n, seed, density: bidirected_complete(n),
    "cycle": lambda n, seed, density: directed_cycle(n),
    "random": lambda n, seed, density: random_strongly_connected(n, max(n, int(density * n)), seed),
}


@dataclass
class BenchRow:
    family: str
    n: int
    m: int
    alpha: str
    status: str
    rounds: int
    maxflow_calls: int
    wall_time: float
    ratio: float | None


def bench_instance(family: str, G: DiGraph, alpha, seed: int, mode: str = EXACT, round_cap=None) -> BenchRow:
    """One game at fixed ``alpha``; for small ``n`` also the search ratio against the oracle."""
    start = time.perf_counter()
    res = play_game(G, GameConfig(Fraction(alpha), mode=mode, seed=seed, round_cap=round_cap))
    elapsed = time.perf_counter() - start
    ratio = None
    if G.n <= ORACLE_BENCH_MAX_N:
        opt = brute_force_sparsest_cut(G).expansion
        approx = approximate_sparsest_cut(G, seed=seed, mode=mode, round_cap=round_cap)
        if opt > 0:
            ratio = float(approx.best_cut.expansion / opt)
        else:
            ratio = 1.0 if approx.best_cut.expansion == 0 else float("inf")
    return BenchRow(
        family, G.n, G.m, str(Fraction(alpha)), res.status, res.rounds, res.maxflow_calls, elapsed, ratio
    )


def run_bench(families, sizes, alpha=1, seed: int = 0, density: float = 3.0, mode: str = EXACT, round_cap=None) -> list[BenchRow]:
    rows = []
    for family in families:
        make = FAMILIES[family]
        for n in sizes:
            G = make(n, seed, density)
            rows.append(bench_instance(family, G, alpha, seed, mode, round_cap))
    return rows


def rows_as_dicts(rows) -> list[dict]:
    return [asdict(r) for r in rows]
