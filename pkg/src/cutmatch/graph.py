"""Directed multigraphs, cuts and directed edge expansion.

Expansion values are exact :class:`fractions.Fraction` objects. A cut is
always read literally: ``expansion(G, S)`` counts arcs leaving ``S``, so the
two orientations of the same partition generally differ.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised when an edge-list file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidCutError(ValueError):
    pass


@dataclass(frozen=True)
class DiGraph:
    """Directed multigraph on vertices ``0..n-1``.

    Parallel arcs and self-loops are allowed. Arc order is preserved and
    matters for determinism of the flow computations built on top.
    """

    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def out_neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[u].append(v)
        return adj

    def arc_multiplicity(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for a in self.arcs:
            counts[a] = counts.get(a, 0) + 1
        return counts

    def degrees(self) -> tuple[list[int], list[int]]:
        """Return ``(in_degree, out_degree)`` lists, self-loops included."""
        indeg = [0] * self.n
        outdeg = [0] * self.n
        for u, v in self.arcs:
            outdeg[u] += 1
            indeg[v] += 1
        return indeg, outdeg


@dataclass(frozen=True)
class Cut:
    """A proper nonempty vertex subset ``S`` of an ``n``-vertex graph."""

    n: int
    side: tuple[int, ...]
    mask: tuple[bool, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        side = tuple(sorted(set(int(v) for v in self.side)))
        if any(v < 0 or v >= self.n for v in side):
            raise InvalidCutError(f"cut vertices out of range for n={self.n}")
        if not 0 < len(side) < self.n:
            raise InvalidCutError(
                f"cut side must be a proper nonempty subset (|S|={len(side)}, n={self.n})"
            )
        mask = [False] * self.n
        for v in side:
            mask[v] = True
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "mask", tuple(mask))

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "Cut":
        return cls(n, tuple(vertices))

    def __len__(self) -> int:
        return len(self.side)

    def __contains__(self, v: int) -> bool:
        return self.mask[v]

    def complement(self) -> "Cut":
        return Cut(self.n, tuple(v for v in range(self.n) if not self.mask[v]))

    def canonical(self) -> "Cut":
        """Smaller side of the partition; on ties, the side holding vertex 0."""
        k = len(self.side)
        if 2 * k < self.n or (2 * k == self.n and self.mask[0]):
            return self
        return self.complement()


def _as_cut(G: DiGraph, S) -> Cut:
    if isinstance(S, Cut):
        if S.n != G.n:
            raise InvalidCutError(f"cut is for n={S.n}, graph has n={G.n}")
        return S
    return Cut(G.n, tuple(S))


def out_boundary(G: DiGraph, S) -> list[tuple[int, int]]:
    """Arcs with tail in ``S`` and head outside, with multiplicity."""
    cut = _as_cut(G, S)
    mask = cut.mask
    return [(u, v) for u, v in G.arcs if mask[u] and not mask[v]]


def expansion(G: DiGraph, S) -> Fraction:
    """Exact directed edge expansion ``|out_boundary| / min(|S|, n - |S|)``."""
    cut = _as_cut(G, S)
    k = len(cut)
    return Fraction(len(out_boundary(G, cut)), min(k, G.n - k))


def strongly_connected_components(G: DiGraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the condensation,
    so the first component is always a sink component.
    """
    n = G.n
    adj = G.out_neighbors()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def is_strongly_connected(G: DiGraph) -> bool:
    return len(strongly_connected_components(G)) == 1


def find_zero_expansion_cut(G: DiGraph) -> Cut | None:
    """Return a sink component of the condensation, or ``None``.

    A sink component has no leaving arcs, so its expansion is exactly 0.
    ``None`` means ``G`` is strongly connected.
    """
    if G.n < 2:
        raise ValueError("need at least 2 vertices")
    comps = strongly_connected_components(G)
    if len(comps) == 1:
        return None
    return Cut(G.n, tuple(comps[0]))


def union_of_matchings(matchings: Sequence, n: int | None = None) -> DiGraph:
    """Multigraph whose arcs are all matching arcs, in round order.

    ``n`` is only needed when ``matchings`` is empty.
    """
    if not matchings:
        if n is None:
            raise ValueError("vertex count required for an empty matching sequence")
        return DiGraph(n, ())
    sizes = {M.n for M in matchings}
    if n is not None:
        sizes.add(n)
    if len(sizes) != 1:
        raise ValueError(f"matchings disagree on vertex count: {sorted(sizes)}")
    arcs: list[tuple[int, int]] = []
    for M in matchings:
        arcs.extend(M.arcs)
    return DiGraph(sizes.pop(), tuple(arcs))


def parse_graph(text: str) -> DiGraph:
    """Parse the ``n m`` header plus ``m`` lines of ``tail head``.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = _data_lines(text)
    if not rows:
        raise GraphFormatError("missing 'n m' header")
    lineno, header = rows[0]
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'", lineno)
    n, m = (_parse_int(tok, lineno) for tok in header)
    if n < 1 or m < 0:
        raise GraphFormatError("header needs n >= 1 and m >= 0", lineno)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise GraphFormatError(f"expected {m} arcs, found {len(body)}", last)
    arcs = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise GraphFormatError("arc line must be 'tail head'", lineno)
        u, v = (_parse_int(tok, lineno) for tok in toks)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range [0, {n})", lineno)
        arcs.append((u, v))
    return DiGraph(n, tuple(arcs))


def serialize_graph(G: DiGraph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.arcs)
    return "\n".join(lines) + "\n"


def read_graph(path) -> DiGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def graph_hash(G: DiGraph) -> str:
    """Content digest of the sorted arc multiset."""
    canon = DiGraph(G.n, tuple(sorted(G.arcs)))
    return "sha256:" + hashlib.sha256(serialize_graph(canon).encode()).hexdigest()


def _data_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, stripped.split()))
    return out


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"not an integer: {tok!r}", lineno) from None
