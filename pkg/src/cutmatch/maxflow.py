"""Integral single-commodity max-flow (Dinic) with min-cut and path decomposition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class FlowConsistencyError(RuntimeError):
    """An internal invariant of the flow machinery was violated."""


@dataclass(frozen=True)
class FlowNetwork:
    num_nodes: int
    arcs: tuple[tuple[int, int, int], ...]
    source: int
    sink: int

    def __post_init__(self):
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for node in (self.source, self.sink):
            if not 0 <= node < self.num_nodes:
                raise ValueError(f"terminal {node} out of range")
        arcs = tuple((int(u), int(v), int(c)) for u, v, c in self.arcs)
        for u, v, c in arcs:
            if not (0 <= u < self.num_nodes and 0 <= v < self.num_nodes):
                raise ValueError(f"arc ({u}, {v}) out of range")
            if c < 0:
                raise ValueError("capacities must be nonnegative integers")
        object.__setattr__(self, "arcs", arcs)

    def out_arcs(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for idx, (u, _, _) in enumerate(self.arcs):
            adj[u].append(idx)
        return adj


@dataclass(frozen=True)
class FlowAssignment:
    flow: tuple[int, ...]
    value: int

    def check(self, net: FlowNetwork) -> None:
        """Raise unless capacities and conservation hold."""
        if len(self.flow) != len(net.arcs):
            raise FlowConsistencyError("flow vector length does not match arc count")
        excess = [0] * net.num_nodes
        for f, (u, v, c) in zip(self.flow, net.arcs):
            if not 0 <= f <= c:
                raise FlowConsistencyError(f"flow {f} outside [0, {c}] on arc ({u}, {v})")
            excess[u] -= f
            excess[v] += f
        for node, e in enumerate(excess):
            if node not in (net.source, net.sink) and e != 0:
                raise FlowConsistencyError(f"conservation violated at node {node}")
        if -excess[net.source] != self.value:
            raise FlowConsistencyError("value differs from net source out-flow")


@dataclass(frozen=True)
class MinCut:
    source_side: frozenset[int]
    capacity: int


def max_flow(net: FlowNetwork) -> FlowAssignment:
    """Maximum integral flow by blocking flows on BFS level graphs.

    Deterministic for a fixed arc order. Max-flow/min-cut duality is checked
    before returning.
    """
    N = net.num_nodes
    s, t = net.source, net.sink
    # residual arcs: 2k forward, 2k+1 reverse
    head: list[int] = []
    res: list[int] = []
    adj: list[list[int]] = [[] for _ in range(N)]
    for u, v, c in net.arcs:
        adj[u].append(len(head))
        head.append(v)
        res.append(c)
        adj[v].append(len(head))
        head.append(u)
        res.append(0)

    value = 0
    while True:
        level = _bfs_levels(adj, head, res, s, N)
        if level[t] < 0:
            break
        ptr = [0] * N
        while True:
            pushed = _augment(adj, head, res, level, ptr, s, t)
            if not pushed:
                break
            value += pushed

    flow = tuple(res[2 * k + 1] for k in range(len(net.arcs)))
    assignment = FlowAssignment(flow, value)
    # final BFS already gives the residual-reachable set
    reach = {v for v, lv in enumerate(level) if lv >= 0}
    cap = sum(c for u, v, c in net.arcs if u in reach and v not in reach)
    if cap != value:
        raise FlowConsistencyError(f"duality check failed: cut {cap} != flow {value}")
    return assignment


def _bfs_levels(adj, head, res, s, N) -> list[int]:
    level = [-1] * N
    level[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            if res[e] > 0 and level[head[e]] < 0:
                level[head[e]] = level[u] + 1
                queue.append(head[e])
    return level


def _augment(adj, head, res, level, ptr, s, t) -> int:
    """Find one augmenting path in the level graph and push its bottleneck."""
    path: list[int] = []
    u = s
    while u != t:
        edges = adj[u]
        advanced = False
        while ptr[u] < len(edges):
            e = edges[ptr[u]]
            w = head[e]
            if res[e] > 0 and level[w] == level[u] + 1:
                path.append(e)
                u = w
                advanced = True
                break
            ptr[u] += 1
        if advanced:
            continue
        if u == s:
            return 0
        # dead end: retire it from the level graph and back up
        level[u] = -1
        e = path.pop()
        u = head[e ^ 1]
        ptr[u] += 1
    bottleneck = min(res[e] for e in path)
    for e in path:
        res[e] -= bottleneck
        res[e ^ 1] += bottleneck
    return bottleneck


def residual_reachable(net: FlowNetwork, flow: FlowAssignment) -> set[int]:
    adj: list[list[int]] = [[] for _ in range(net.num_nodes)]
    for f, (u, v, c) in zip(flow.flow, net.arcs):
        if f < c:
            adj[u].append(v)
        if f > 0:
            adj[v].append(u)
    seen = {net.source}
    queue = deque([net.source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def min_cut(net: FlowNetwork, flow: FlowAssignment) -> MinCut:
    """Source side = nodes reachable from the source in the residual network.

    Raises :class:`FlowConsistencyError` if the flow is not maximum.
    """
    reach = residual_reachable(net, flow)
    if net.sink in reach:
        raise FlowConsistencyError("sink reachable in residual network: flow is not maximum")
    cap = sum(c for u, v, c in net.arcs if u in reach and v not in reach)
    if cap != flow.value:
        raise FlowConsistencyError(f"min-cut capacity {cap} != flow value {flow.value}")
    return MinCut(frozenset(reach), cap)


def cancel_cycles(net: FlowNetwork, flow: FlowAssignment) -> FlowAssignment:
    """Remove all flow circulating around directed cycles.

    Divergence at every node is unchanged and no arc's flow increases.
    """
    f = list(flow.flow)
    N = net.num_nodes
    adj = net.out_arcs()
    ptr = [0] * N
    state = [0] * N  # 0 new, 1 on stack, 2 finished
    for root in range(N):
        if state[root]:
            continue
        stack = [root]
        state[root] = 1
        used: list[int] = []  # used[k] = arc from stack[k] to stack[k+1]
        while stack:
            u = stack[-1]
            edges = adj[u]
            while ptr[u] < len(edges) and (f[edges[ptr[u]]] == 0 or state[net.arcs[edges[ptr[u]]][1]] == 2):
                ptr[u] += 1
            if ptr[u] == len(edges):
                state[u] = 2
                stack.pop()
                if used:
                    used.pop()
                continue
            e = edges[ptr[u]]
            w = net.arcs[e][1]
            if state[w] == 0:
                state[w] = 1
                stack.append(w)
                used.append(e)
                continue
            # state[w] == 1: cycle from w around to u, closed by e
            pos = stack.index(w)
            cycle = used[pos:] + [e]
            delta = min(f[a] for a in cycle)
            for a in cycle:
                f[a] -= delta
            for node in stack[pos + 1:]:
                state[node] = 0
            del stack[pos + 1:]
            del used[pos:]
    return FlowAssignment(tuple(f), flow.value)


def decompose_paths(net: FlowNetwork, flow: FlowAssignment) -> list[list[int]]:
    """Split a cycle-free integral flow into ``value`` unit source-sink paths.

    Each path is a list of arc indices. Summing the paths reproduces the
    flow exactly; leftover mass raises :class:`FlowConsistencyError`.
    """
    f = list(flow.flow)
    adj = net.out_arcs()
    ptr = [0] * net.num_nodes
    paths: list[list[int]] = []
    limit = len(net.arcs) + 1
    for _ in range(flow.value):
        u = net.source
        path: list[int] = []
        while u != net.sink:
            edges = adj[u]
            while ptr[u] < len(edges) and f[edges[ptr[u]]] == 0:
                ptr[u] += 1
            if ptr[u] == len(edges) or len(path) > limit:
                raise FlowConsistencyError(f"path extraction stuck at node {u}")
            e = edges[ptr[u]]
            f[e] -= 1
            path.append(e)
            u = net.arcs[e][1]
        paths.append(path)
    if any(f):
        raise FlowConsistencyError("flow mass left after decomposition (uncancelled cycle?)")
    return paths


def path_nodes(net: FlowNetwork, path: list[int]) -> list[int]:
    if not path:
        return []
    nodes = [net.arcs[path[0]][0]]
    nodes.extend(net.arcs[e][1] for e in path)
    return nodes
