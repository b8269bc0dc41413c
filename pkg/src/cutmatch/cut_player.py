"""Cut player: lazy random walk over the matching sequence and median bisection.

The exact walk matrix is kept as integer numerators over one shared
denominator. Every round averages pairs of rows, so after ``t`` rounds the
denominator is ``2**t`` and each update is a plain integer row addition.
Entry ``P[i, j]`` is the probability that a walk started at ``j`` ends at
``i``; row ``i`` is the vector the projection step works with.

Each round draws a fresh direction, replays all matchings so far and
splits at the median, ties going to the smaller index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from cutmatch.graph import Cut


class MatchingError(ValueError):
    """A matching is not a perfect directed matching on the expected vertex set."""


def predecessors(arcs: Sequence[tuple[int, int]], n: int) -> np.ndarray:
    """Map each vertex to the tail of its unique in-arc.

    Raises :class:`MatchingError` unless every vertex has exactly one in-arc
    and exactly one out-arc.
    """
    pred = np.full(n, -1, dtype=np.intp)
    outdeg = np.zeros(n, dtype=np.intp)
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise MatchingError(f"arc ({u}, {v}) out of range for n={n}")
        if pred[v] != -1:
            raise MatchingError(f"vertex {v} has more than one in-arc")
        pred[v] = u
        outdeg[u] += 1
    missing = np.flatnonzero(pred < 0)
    if missing.size:
        raise MatchingError(f"vertex {int(missing[0])} has no in-arc")
    bad = np.flatnonzero(outdeg != 1)
    if bad.size:
        raise MatchingError(f"vertex {int(bad[0])} has out-degree {int(outdeg[bad[0]])}")
    return pred


def _pred_of(M, n: int) -> np.ndarray:
    if getattr(M, "n", n) != n:
        raise MatchingError(f"matching is on {M.n} vertices, expected {n}")
    cached = getattr(M, "pred", None)
    if cached is not None:
        return cached
    arcs = M.arcs if hasattr(M, "arcs") else M
    return predecessors(arcs, n)


@dataclass
class WalkMatrix:
    """Exact walk matrix ``P = numerators / denominator``."""

    numerators: np.ndarray  # object dtype, Python ints
    denominator: int
    t: int = 0

    @classmethod
    def identity(cls, n: int) -> "WalkMatrix":
        num = np.zeros((n, n), dtype=object)
        for i in range(n):
            num[i, i] = 1
        return cls(num, 1, 0)

    @classmethod
    def from_fractions(cls, rows) -> "WalkMatrix":
        rows = [[Fraction(x) for x in row] for row in rows]
        den = math.lcm(*(x.denominator for row in rows for x in row))
        num = np.array([[int(x * den) for x in row] for row in rows], dtype=object)
        return cls(num, int(den), 0)

    @property
    def n(self) -> int:
        return self.numerators.shape[0]

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.numerators[i, j], self.denominator)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denominator) for x in row] for row in self.numerators]

    def to_float(self) -> np.ndarray:
        return np.array(self.to_fractions(), dtype=float)

    def min_entry(self) -> Fraction:
        return Fraction(min(self.numerators.flat), self.denominator)


def apply_matching_exact(P: WalkMatrix, M) -> WalkMatrix:
    """One round of the walk: row ``j`` becomes the mean of rows ``j`` and ``pred(j)``.

    All reads come from the previous round's matrix.
    """
    pred = _pred_of(M, P.n)
    num = P.numerators + P.numerators[pred]
    return WalkMatrix(num, P.denominator * 2, P.t + 1)


def potential(P: WalkMatrix) -> Fraction:
    """Exact ``sum_ij (P_ij - 1/n)**2``."""
    n, D = P.n, P.denominator
    total = 0
    for x in P.numerators.flat:
        d = n * x - D
        total += d * d
    return Fraction(total, n * n * D * D)


def potential_drop_formula(P: WalkMatrix, M) -> Fraction:
    """Quarter of the summed squared row distances over the matching's arcs."""
    arcs = M.arcs if hasattr(M, "arcs") else M
    D = P.denominator
    total = 0
    for i, j in arcs:
        diff = P.numerators[i] - P.numerators[j]
        total += sum(x * x for x in diff)
    return Fraction(total, 4 * D * D)


def is_mixing(P: WalkMatrix) -> bool:
    """Every entry is at least ``1/(2n)``."""
    return 2 * P.n * min(P.numerators.flat) >= P.denominator


def sample_orthogonal_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random unit vector in the hyperplane orthogonal to all-ones."""
    if n < 2:
        raise ValueError("need n >= 2")
    while True:
        r = rng.standard_normal(n)
        r -= r.mean()
        norm = np.linalg.norm(r)
        if norm > 1e-12:
            r /= norm
            # second centering pass keeps sum(r) at rounding level
            r -= r.mean()
            return r / np.linalg.norm(r)


def sample_orthogonal_unit_vectors(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Batch version: ``size`` rows, each distributed like :func:`sample_orthogonal_unit_vector`."""
    R = rng.standard_normal((size, n))
    R -= R.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(R, axis=1, keepdims=True)
    bad = norms[:, 0] <= 1e-12
    if bad.any():
        for k in np.flatnonzero(bad):
            R[k] = sample_orthogonal_unit_vector(n, rng)
            norms[k] = 1.0
    return R / norms


@dataclass(frozen=True)
class ProjectionVector:
    u: np.ndarray
    r: np.ndarray


def replay_walk_projection(r: np.ndarray, matchings: Sequence, n: int | None = None) -> ProjectionVector:
    """Compute ``u_i = P_i(t) . r`` by replaying the rounds on the vector ``r``.

    Costs O(n) per round and never builds ``P``.
    """
    r = np.asarray(r, dtype=float)
    n = r.shape[0] if n is None else n
    u = r.copy()
    for M in matchings:
        pred = _pred_of(M, n)
        u = 0.5 * (u + u[pred])
    return ProjectionVector(u, r)


def project_exact(P: WalkMatrix, r: np.ndarray) -> np.ndarray:
    """Projection of each row of the exact matrix onto ``r`` (float)."""
    return P.to_float() @ np.asarray(r, dtype=float)


@dataclass(frozen=True)
class Bisection:
    S: Cut
    S_bar: Cut

    @property
    def n(self) -> int:
        return self.S.n


def median_bisection(u) -> Bisection:
    """Lower half of ``u`` by value, ties broken by vertex index."""
    values = u.u if isinstance(u, ProjectionVector) else np.asarray(u)
    n = len(values)
    if n % 2:
        raise ValueError(f"median bisection needs even n, got {n}")
    order = np.lexsort((np.arange(n), values))
    half = n // 2
    S = Cut(n, tuple(int(v) for v in order[:half]))
    return Bisection(S, S.complement())


def cut_player(matchings: Sequence, n: int, rng: np.random.Generator) -> tuple[Bisection, ProjectionVector]:
    """Fresh direction, replay all rounds, split at the median."""
    r = sample_orthogonal_unit_vector(n, rng)
    proj = replay_walk_projection(r, matchings, n)
    return median_bisection(proj), proj
