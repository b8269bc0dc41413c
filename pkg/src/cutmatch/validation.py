"""Input validation for the estimator API."""

from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from cutmatch.graph import DiGraph


def check_digraph(X, n_vertices: int | None = None) -> DiGraph:
    """Coerce ``X`` into a :class:`DiGraph`.

    Accepted inputs:

    - a ``DiGraph`` (returned as is),
    - a square adjacency matrix, dense or scipy sparse, whose nonnegative
      integer entries are arc multiplicities,
    - an ``(m, 2)`` array of ``(tail, head)`` pairs, which needs ``n_vertices``.
    """
    if isinstance(X, DiGraph):
        if n_vertices is not None and n_vertices != X.n:
            raise ValueError(f"n_vertices={n_vertices} disagrees with graph n={X.n}")
        return X
    if n_vertices is not None:
        arcs = np.asarray(X)
        if arcs.size == 0:
            arcs = arcs.reshape(0, 2)
        if arcs.ndim != 2 or arcs.shape[1] != 2:
            raise ValueError(f"arc list must have shape (m, 2), got {arcs.shape}")
        _require_integral(arcs, "arc endpoints")
        return DiGraph(int(n_vertices), tuple(map(tuple, arcs.astype(np.int64).tolist())))
    if sp.issparse(X):
        A = sp.coo_matrix(X)
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {A.shape}")
        _require_integral(A.data, "adjacency entries")
        entries = sorted(zip(A.row.tolist(), A.col.tolist(), A.data.astype(np.int64).tolist()))
        n = A.shape[0]
    else:
        A = np.asarray(X)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(
                "expected a DiGraph, a square adjacency matrix, or an arc list with n_vertices; "
                f"got array of shape {A.shape}"
            )
        _require_integral(A, "adjacency entries")
        n = A.shape[0]
        rows, cols = np.nonzero(A)
        entries = [(int(i), int(j), int(A[i, j])) for i, j in zip(rows, cols)]
    arcs = []
    for i, j, k in entries:
        arcs.extend([(i, j)] * k)
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    return DiGraph(n, tuple(arcs))


def _require_integral(a, what: str) -> None:
    a = np.asarray(a)
    if a.size == 0:
        return
    if not np.issubdtype(a.dtype, np.number) or np.issubdtype(a.dtype, np.complexfloating):
        raise ValueError(f"{what} must be numeric")
    if not np.all(np.isfinite(a)) or np.any(a != np.round(a)):
        raise ValueError(f"{what} must be integers")
    if np.any(a < 0):
        raise ValueError(f"{what} must be nonnegative")


def check_alpha(alpha) -> Fraction | None:
    """``"auto"``/``None`` means search; anything else becomes an exact positive rational."""
    if alpha is None or (isinstance(alpha, str) and alpha == "auto"):
        return None
    if isinstance(alpha, float):
        # finite float -> its exact decimal repr, not its binary expansion
        alpha = repr(alpha)
    try:
        value = Fraction(alpha)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"alpha must be 'auto' or a positive rational, got {alpha!r}") from None
    if value <= 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    return value


def check_seed(random_state) -> int:
    """Seeds are plain nonnegative 64-bit integers; ``None`` maps to 0 for reproducibility."""
    if random_state is None:
        return 0
    if isinstance(random_state, (bool, np.bool_)) or not isinstance(random_state, numbers.Integral):
        raise ValueError(f"random_state must be an integer seed, got {random_state!r}")
    seed = int(random_state)
    if not 0 <= seed < 2**64:
        raise ValueError("random_state must fit in an unsigned 64-bit integer")
    return seed
