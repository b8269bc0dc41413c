"""Independent checks: exhaustive sparsest-cut oracle, certificate verifiers, projection statistics.

Nothing here trusts solver internals. Certificates are recomputed from the
graph and the recorded matchings alone.

The expander verifier replays the matchings, checks double stochasticity
and mixing, and on small graphs also brute-forces the union of the
matchings to confirm expansion at least 1/2. Mixing already forces that
bound, since every cut then carries flow at least ``min(|S|, n-|S|)/2``, so
the brute-force step is a safety net.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from cutmatch.cut_player import (
    MatchingError,
    WalkMatrix,
    apply_matching_exact,
    predecessors,
    potential,
    sample_orthogonal_unit_vectors,
)
from cutmatch.graph import Cut, DiGraph, InvalidCutError, expansion, union_of_matchings
from cutmatch.matching_player import DirectedPerfectMatching, arc_capacity, embedding_loads

ORACLE_MAX_N = 20
UNION_BRUTE_FORCE_MAX_N = 14

# verdict codes
ACCEPT = "OK"
CUT_INVALID = "C0_INVALID_CUT"
CUT_EXPANSION_MISMATCH = "C1_EXPANSION_MISMATCH"
CUT_EXCEEDS_ALPHA = "C2_EXCEEDS_ALPHA"
NOT_PERFECT_MATCHING = "E1_NOT_PERFECT_MATCHING"
BAD_EMBEDDING = "E2_BAD_EMBEDDING"
CONGESTION = "E3_CONGESTION"
NOT_DOUBLY_STOCHASTIC = "E4_NOT_DOUBLY_STOCHASTIC"
NOT_MIXING = "E5_NOT_MIXING"
UNION_EXPANSION = "E6_UNION_EXPANSION"


@dataclass(frozen=True)
class Verdict:
    code: str
    message: str = ""
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.code == ACCEPT

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class OracleResult:
    cut: Cut
    expansion: Fraction
    candidates: int


def _boundary_counts(G: DiGraph) -> tuple[np.ndarray, np.ndarray]:
    """Out-boundary size and popcount for every vertex subset, indexed by bitmask."""
    n = G.n
    masks = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    bits = [((masks >> v) & 1).astype(bool) for v in range(n)]
    for u, v in G.arcs:
        if u != v:
            counts += bits[u] & ~bits[v]
    sizes = np.zeros(1 << n, dtype=np.int64)
    for b in bits:
        sizes += b
    return counts, sizes


def brute_force_sparsest_cut(G: DiGraph) -> OracleResult:
    """Exact minimum expansion over all proper nonempty subsets.

    Ties go to the lexicographically smallest sorted vertex list.
    """
    n = G.n
    if n < 2:
        raise ValueError("oracle needs at least 2 vertices")
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle is capped at n={ORACLE_MAX_N}, got n={n}")
    counts, sizes = _boundary_counts(G)
    proper = (sizes > 0) & (sizes < n)
    best = None
    for k in range(1, n):
        sel = proper & (sizes == k)
        c = int(counts[sel].min())
        val = Fraction(c, min(k, n - k))
        if best is None or val < best:
            best = val
    denom = np.minimum(sizes, n - sizes)
    # exact equality: counts * best.den == best.num * denom
    hit = proper & (counts * best.denominator == best.numerator * denom)
    sides = [tuple(v for v in range(n) if (int(mask) >> v) & 1) for mask in np.flatnonzero(hit)]
    witness = min(sides)
    return OracleResult(Cut(n, witness), best, int(proper.sum()))


def min_expansion(G: DiGraph) -> Fraction:
    return brute_force_sparsest_cut(G).expansion


def verify_cut_certificate(G: DiGraph, cert) -> Verdict:
    try:
        cut = cert.cut if isinstance(cert.cut, Cut) else Cut(G.n, tuple(cert.cut))
        if cut.n != G.n:
            raise InvalidCutError("cut is for a different vertex count")
        actual = expansion(G, cut)
    except InvalidCutError as exc:
        return Verdict(CUT_INVALID, str(exc))
    if actual != Fraction(cert.expansion):
        return Verdict(
            CUT_EXPANSION_MISMATCH,
            f"recomputed expansion {actual} != claimed {cert.expansion}",
            {"recomputed": actual},
        )
    if actual > Fraction(cert.alpha_at_failure):
        return Verdict(
            CUT_EXCEEDS_ALPHA,
            f"expansion {actual} exceeds alpha {cert.alpha_at_failure}",
            {"recomputed": actual},
        )
    return Verdict(ACCEPT, f"cut expansion {actual}", {"recomputed": actual})


def verify_double_stochastic(P: WalkMatrix) -> Verdict:
    num = P.numerators
    D = P.denominator
    for i, s in enumerate(num.sum(axis=1)):
        if s != D:
            return Verdict(NOT_DOUBLY_STOCHASTIC, f"row {i} sums to {Fraction(s, D)}")
    for j, s in enumerate(num.sum(axis=0)):
        if s != D:
            return Verdict(NOT_DOUBLY_STOCHASTIC, f"column {j} sums to {Fraction(s, D)}")
    if min(num.flat) < 0:
        return Verdict(NOT_DOUBLY_STOCHASTIC, "negative entry")
    return Verdict(ACCEPT)


def _is_g_path(path, tail, head, arc_set) -> bool:
    if len(path) < 2 or path[0] != tail or path[-1] != head:
        return False
    return all(a in arc_set for a in zip(path, path[1:]))


def verify_expander_certificate(G: DiGraph, cert, brute_force_max_n: int = UNION_BRUTE_FORCE_MAX_N) -> Verdict:
    """Run the six checks in order; the first failure decides the verdict.

    1. each round is a perfect directed matching
    2. every routing path is a directed path of ``G`` joining its arc's ends
    3. per-direction load per round within ``ceil(1/alpha)`` and total load
       within the claimed congestion bound (both scaled by arc multiplicity);
       the claimed bound and lower bound must match the round count
    4. exact replay stays doubly stochastic; a claimed final potential must
       match and sit below ``1/(4n^2)``
    5. every entry of the final walk matrix is at least ``1/(2n)``
    6. for small ``n``, the union of matchings has expansion at least 1/2
    """
    n = G.n
    matchings = list(cert.matchings)
    t = len(matchings)

    for k, M in enumerate(matchings):
        try:
            if M.n != n:
                raise MatchingError(f"matching on {M.n} vertices, graph has {n}")
            predecessors(M.arcs, n)
            S = {a for a, _ in M.forward}
            if len(M.forward) * 2 != n or len(S) * 2 != n or any(b in S for _, b in M.forward):
                raise MatchingError("forward half is not a perfect matching across a bisection")
            if any(a in S or b not in S for a, b in M.backward):
                raise MatchingError("backward half does not go from S_bar to S")
        except MatchingError as exc:
            return Verdict(NOT_PERFECT_MATCHING, f"round {k + 1}: {exc}", {"round": k + 1})

    arc_set = set(G.arcs)
    for k, M in enumerate(matchings):
        for _, arcs, paths in M.direction_paths():
            if len(paths) != len(arcs):
                return Verdict(BAD_EMBEDDING, f"round {k + 1}: missing routing paths", {"round": k + 1})
            for (a, b), path in zip(arcs, paths):
                if not _is_g_path(path, a, b, arc_set):
                    return Verdict(
                        BAD_EMBEDDING,
                        f"round {k + 1}: path for ({a}, {b}) is not a path of G",
                        {"round": k + 1, "arc": (a, b)},
                    )

    cap = arc_capacity(cert.alpha)
    expected_bound = Fraction(2 * t * cap)
    if Fraction(cert.congestion_bound) != expected_bound:
        return Verdict(CONGESTION, f"congestion bound {cert.congestion_bound} != 2*t*ceil(1/alpha) = {expected_bound}")
    if Fraction(cert.implied_lower_bound) != Fraction(1, 2) / expected_bound:
        return Verdict(CONGESTION, f"implied lower bound {cert.implied_lower_bound} inconsistent with congestion")
    mult = G.arc_multiplicity()
    total: dict[tuple[int, int], int] = {}
    for k, M in enumerate(matchings):
        for direction, load in embedding_loads(M).items():
            for a, x in load.items():
                if x > cap * mult[a]:
                    return Verdict(
                        CONGESTION,
                        f"round {k + 1} {direction}: arc {a} carries {x} > {cap * mult[a]}",
                        {"round": k + 1, "arc": a},
                    )
                total[a] = total.get(a, 0) + x
    for a, x in total.items():
        if x > cert.congestion_bound * mult[a]:
            return Verdict(CONGESTION, f"arc {a} carries {x} in total", {"arc": a})
    max_load = max((Fraction(x, mult[a]) for a, x in total.items()), default=Fraction(0))

    P = WalkMatrix.identity(n)
    for k, M in enumerate(matchings):
        P = apply_matching_exact(P, M)
        v = verify_double_stochastic(P)
        if not v:
            return Verdict(NOT_DOUBLY_STOCHASTIC, f"round {k + 1}: {v.message}", {"round": k + 1})
    psi = potential(P)
    if cert.final_psi is not None:
        if Fraction(cert.final_psi) != psi:
            return Verdict(NOT_DOUBLY_STOCHASTIC, f"claimed final psi {cert.final_psi} != replayed {psi}")
        if psi > Fraction(1, 4 * n * n):
            return Verdict(NOT_DOUBLY_STOCHASTIC, f"final psi {psi} above 1/(4n^2)")

    if 2 * n * min(P.numerators.flat) < P.denominator:
        return Verdict(NOT_MIXING, f"min walk probability {P.min_entry()} < 1/(2n)", {"psi": psi})

    union_exp = None
    if n <= brute_force_max_n:
        H = union_of_matchings(matchings, n)
        union_exp = brute_force_sparsest_cut(H).expansion
        if union_exp < Fraction(1, 2):
            return Verdict(UNION_EXPANSION, f"union of matchings has expansion {union_exp} < 1/2")

    return Verdict(
        ACCEPT,
        f"{t} rounds, psi={psi}, max load {max_load}",
        {"psi": psi, "max_load": max_load, "union_expansion": union_exp},
    )


@dataclass
class ProjectionReport:
    n: int
    samples: int
    vector_means: list[float]
    vector_expected: list[float]
    relative_errors: list[float]
    constant: float
    pair_failures: int
    pair_trials: int

    @property
    def failure_fraction(self) -> float:
        return self.pair_failures / self.pair_trials if self.pair_trials else 0.0


def fixed_test_vectors(n: int) -> list[np.ndarray]:
    """Five deterministic vectors orthogonal to all-ones."""
    idx = np.arange(n, dtype=float)
    vs = []
    e = np.zeros(n)
    e[0], e[1] = 1.0, -1.0
    vs.append(e)
    vs.append(10 * e)
    vs.append(idx - idx.mean())
    alt = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    vs.append(alt - alt.mean())
    w = np.zeros(n)
    w[: n // 2] = 3.0
    w[n // 2 :] = -1.0
    vs.append(w - w.mean())
    return vs


def gaussian_projection_means(vectors, n: int, samples: int, rng: np.random.Generator):
    R = sample_orthogonal_unit_vectors(n, samples, rng)
    means, expected = [], []
    for v in vectors:
        proj = R @ v
        means.append(float(np.mean(proj**2)))
        expected.append(float(v @ v) / (n - 1))
    return means, expected


def random_walk_state(n: int, rounds: int, rng: np.random.Generator) -> WalkMatrix:
    """Walk matrix after ``rounds`` random perfect directed matchings across random bisections."""
    P = WalkMatrix.identity(n)
    for _ in range(rounds):
        perm = rng.permutation(n)
        S, T = perm[: n // 2], perm[n // 2 :]
        fwd = list(zip(S, rng.permutation(T)))
        bwd = list(zip(T, rng.permutation(S)))
        P = apply_matching_exact(P, DirectedPerfectMatching(n, fwd, bwd))
    return P


def projection_lower_bound_failures(
    n: int, draws: int, constant: float, rng: np.random.Generator, states: int = 10
) -> tuple[int, int]:
    """Count draws where ``|P_i - P_j|^2 < (n-1)/(C ln n) * (u_i - u_j)^2``.

    Walk states come from random matching sequences; each draw picks a
    fresh direction and a random vertex pair.
    """
    failures = 0
    per_state = max(1, draws // states)
    total = 0
    factor = (n - 1) / (constant * np.log(n))
    for _ in range(states):
        P = random_walk_state(n, int(rng.integers(1, 2 * int(np.log2(n)) + 1)), rng).to_float()
        R = sample_orthogonal_unit_vectors(n, per_state, rng)
        U = R @ P.T  # U[k, i] = P_i . r_k
        i = rng.integers(0, n, per_state)
        j = (i + rng.integers(1, n, per_state)) % n
        dist2 = np.sum((P[i] - P[j]) ** 2, axis=1)
        du = U[np.arange(per_state), i] - U[np.arange(per_state), j]
        failures += int(np.sum(dist2 < factor * du**2 * (1 - 1e-9)))
        total += per_state
    return failures, total


def projection_statistics(n: int, samples: int, rng: np.random.Generator, constant: float = 16.0, pair_draws: int | None = None) -> ProjectionReport:
    if n < 4:
        raise ValueError("need n >= 4")
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    vectors = fixed_test_vectors(n)
    means, expected = gaussian_projection_means(vectors, n, samples, rng)
    rel = [abs(a - b) / b for a, b in zip(means, expected)]
    fails, trials = projection_lower_bound_failures(n, pair_draws or samples, constant, rng)
    return ProjectionReport(n, samples, means, expected, rel, constant, fails, trials)
