"""Matching player: route a perfect directed matching across a bisection, or find a sparse cut.

For a bisection ``(S, S_bar)`` two flow problems are solved over the arcs of
``G``, one from ``S`` to ``S_bar`` and one back. Each graph arc gets capacity
``ceil(1/alpha)``; unit arcs join a super-source to the origin side and the
destination side to a super-sink. A full flow of ``n/2`` in both directions
yields a perfect directed matching together with its routing paths. If either
flow falls short, the residual-reachable graph vertices form a cut with
expansion at most ``alpha``.

The layout is chosen so that a short flow always exposes such a cut. The
forward direction is tried first and its failure takes precedence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from cutmatch.cut_player import predecessors
from cutmatch.graph import Cut, DiGraph, expansion
from cutmatch.maxflow import (
    FlowNetwork,
    cancel_cycles,
    decompose_paths,
    max_flow,
    min_cut,
    path_nodes,
)

FORWARD = "forward"
BACKWARD = "backward"


class InternalConsistencyError(RuntimeError):
    pass


def arc_capacity(alpha: Fraction) -> int:
    """``ceil(1/alpha)`` computed exactly."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return -(-alpha.denominator // alpha.numerator)


@dataclass(frozen=True)
class DirectedPerfectMatching:
    """One round's matching ``forward`` (S to S_bar) plus ``backward`` (S_bar to S).

    ``forward_paths[k]`` is the vertex sequence in ``G`` routing
    ``forward[k]``; likewise for the backward half.
    """

    n: int
    forward: tuple[tuple[int, int], ...]
    backward: tuple[tuple[int, int], ...]
    forward_paths: tuple[tuple[int, ...], ...] = ()
    backward_paths: tuple[tuple[int, ...], ...] = ()
    _pred: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "forward", tuple((int(a), int(b)) for a, b in self.forward))
        object.__setattr__(self, "backward", tuple((int(a), int(b)) for a, b in self.backward))
        object.__setattr__(self, "forward_paths", tuple(tuple(int(v) for v in p) for p in self.forward_paths))
        object.__setattr__(self, "backward_paths", tuple(tuple(int(v) for v in p) for p in self.backward_paths))

    @property
    def pred(self) -> np.ndarray:
        """Tail of each vertex's in-arc; raises ``MatchingError`` if not perfect."""
        if self._pred is None:
            object.__setattr__(self, "_pred", predecessors(self.arcs, self.n))
        return self._pred

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self.forward + self.backward

    def direction_paths(self):
        yield FORWARD, self.forward, self.forward_paths
        yield BACKWARD, self.backward, self.backward_paths


@dataclass(frozen=True)
class MatchingOutcome:
    """Either a matching or a cut certified to have expansion at most ``alpha``."""

    alpha: Fraction
    matching: DirectedPerfectMatching | None = None
    cut: Cut | None = None
    cut_expansion: Fraction | None = None
    flow_values: tuple[int, ...] = ()
    failed_direction: str | None = None

    def __post_init__(self):
        if (self.matching is None) == (self.cut is None):
            raise InternalConsistencyError("exactly one of matching/cut must be set")
        if self.cut is not None and not self.cut_expansion <= self.alpha:
            raise InternalConsistencyError(
                f"cut expansion {self.cut_expansion} exceeds alpha {self.alpha}"
            )

    @property
    def maxflow_calls(self) -> int:
        return len(self.flow_values)


def build_flow_network(G: DiGraph, S: Cut, direction: str, alpha) -> FlowNetwork:
    """Arcs ``0..m-1`` mirror ``G``; then source arcs, then sink arcs.

    Node ``n`` is the super-source and ``n + 1`` the super-sink.
    """
    if 2 * len(S) != G.n:
        raise ValueError(f"bisection side has {len(S)} vertices, need {G.n // 2}")
    cap = arc_capacity(alpha)
    if direction == FORWARD:
        origin = [v for v in range(G.n) if S.mask[v]]
    elif direction == BACKWARD:
        origin = [v for v in range(G.n) if not S.mask[v]]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    in_origin = set(origin)
    dest = [v for v in range(G.n) if v not in in_origin]
    src, snk = G.n, G.n + 1
    arcs = [(u, v, cap) for u, v in G.arcs]
    arcs.extend((src, v, 1) for v in origin)
    arcs.extend((v, snk, 1) for v in dest)
    return FlowNetwork(G.n + 2, tuple(arcs), src, snk)


def _route(G: DiGraph, S: Cut, direction: str, alpha):
    net = build_flow_network(G, S, direction, alpha)
    flow = max_flow(net)
    return net, flow


def _matching_half(net: FlowNetwork, flow, n: int):
    if flow.value != n // 2:
        raise InternalConsistencyError("matching extraction needs a full flow")
    acyclic = cancel_cycles(net, flow)
    pairs = []
    for path in decompose_paths(net, acyclic):
        nodes = path_nodes(net, path)
        # nodes = [source, s, ..., s_bar, sink]
        g_path = tuple(nodes[1:-1])
        pairs.append(((g_path[0], g_path[-1]), g_path))
    pairs.sort()
    return tuple(p for p, _ in pairs), tuple(path for _, path in pairs)


def _cut_from_failure(G: DiGraph, net: FlowNetwork, flow, alpha: Fraction):
    mc = min_cut(net, flow)
    side = sorted(v for v in mc.source_side if v < G.n)
    if not 0 < len(side) < G.n:
        raise InternalConsistencyError("min-cut shore is empty or all of V")
    C = Cut(G.n, tuple(side))
    return C, expansion(G, C)


def find_matching_or_cut(G: DiGraph, S: Cut, alpha) -> MatchingOutcome:
    """Route the forward half, then the backward half; stop at the first shortfall."""
    alpha = Fraction(alpha)
    n = G.n
    if n % 2:
        raise ValueError("matching player needs an even number of vertices")
    half = n // 2
    values: list[int] = []
    halves = {}
    for direction in (FORWARD, BACKWARD):
        net, flow = _route(G, S, direction, alpha)
        values.append(flow.value)
        if flow.value > half:
            raise InternalConsistencyError(f"flow value {flow.value} exceeds n/2")
        if flow.value < half:
            C, exp = _cut_from_failure(G, net, flow, alpha)
            return MatchingOutcome(
                alpha,
                cut=C,
                cut_expansion=exp,
                flow_values=tuple(values),
                failed_direction=direction,
            )
        halves[direction] = _matching_half(net, flow, n)
    fwd, fwd_paths = halves[FORWARD]
    bwd, bwd_paths = halves[BACKWARD]
    M = DirectedPerfectMatching(n, fwd, bwd, fwd_paths, bwd_paths)
    M.pred  # validates degrees
    return MatchingOutcome(alpha, matching=M, flow_values=tuple(values))


def embedding_loads(M: DirectedPerfectMatching) -> dict[str, dict[tuple[int, int], int]]:
    """Per-direction count of routing paths through each ordered vertex pair."""
    loads: dict[str, dict[tuple[int, int], int]] = {}
    for direction, _, paths in M.direction_paths():
        load: dict[tuple[int, int], int] = {}
        for path in paths:
            for a in zip(path, path[1:]):
                load[a] = load.get(a, 0) + 1
        loads[direction] = load
    return loads


def congestion_ok(G: DiGraph, M: DirectedPerfectMatching, per_arc_bound: int) -> bool:
    """Each direction loads a vertex pair by at most ``bound * multiplicity``."""
    mult = G.arc_multiplicity()
    for load in embedding_loads(M).values():
        for a, k in load.items():
            if k > per_arc_bound * mult.get(a, 0):
                return False
    return True


__all__ = [
    "BACKWARD",
    "FORWARD",
    "DirectedPerfectMatching",
    "InternalConsistencyError",
    "MatchingOutcome",
    "arc_capacity",
    "build_flow_network",
    "congestion_ok",
    "embedding_loads",
    "find_matching_or_cut",
]
