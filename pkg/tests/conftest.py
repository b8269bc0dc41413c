import itertools
from fractions import Fraction

import numpy as np
import pytest

from cutmatch.graph import DiGraph


def naive_expansion(n, arcs, S):
    S = set(S)
    out = sum(1 for u, v in arcs if u in S and v not in S)
    return Fraction(out, min(len(S), n - len(S)))


def naive_sparsest_cut(n, arcs):
    """Enumerate every proper nonempty subset with itertools; slow but obviously right."""
    best = None
    for k in range(1, n):
        for S in itertools.combinations(range(n), k):
            val = naive_expansion(n, arcs, S)
            if best is None or val < best:
                best = val
    return best


def naive_walk_matrix(n, matchings):
    """Simulate the lazy walk from every start vertex with Fractions.

    Returns P with P[i][j] = Pr[start j ends at i].
    """
    cols = []
    for start in range(n):
        dist = [Fraction(0)] * n
        dist[start] = Fraction(1)
        for arcs in matchings:
            succ = {u: v for u, v in arcs}
            new = [Fraction(0)] * n
            for v in range(n):
                new[v] += dist[v] / 2
                new[succ[v]] += dist[v] / 2
            dist = new
        cols.append(dist)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def random_perfect_matching_arcs(n, rng):
    perm = rng.permutation(n)
    S, T = perm[: n // 2], perm[n // 2 :]
    fwd = [(int(a), int(b)) for a, b in zip(S, rng.permutation(T))]
    bwd = [(int(a), int(b)) for a, b in zip(T, rng.permutation(S))]
    return fwd, bwd


def random_sc_digraph(n, extra, rng):
    order = rng.permutation(n)
    arcs = [(int(order[i]), int(order[(i + 1) % n])) for i in range(n)]
    while len(arcs) < n + extra:
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u != v:
            arcs.append((u, v))
    return DiGraph(n, tuple(arcs))


def bidirected_complete(n):
    return DiGraph(n, tuple((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n):
    return DiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
