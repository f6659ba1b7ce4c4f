"""Node and edge centrality kernels used by the blocking baselines."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .graph import Graph, edge_distances


class ConvergenceError(RuntimeError):
    """Iteration cap reached; carries the last residual."""

    def __init__(self, message, residual, iterations):
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


def node_pagerank(g: Graph, damping: float = 0.85, tol: float = 1e-10, max_iter: int = 10000) -> np.ndarray:
    """PageRank by power iteration on the unweighted structure.

    Degree-zero nodes redistribute their mass uniformly, so the vector sums
    to 1.  Stops when the L1 step falls below tol.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    n = g.n
    if n == 0:
        return np.zeros(0)
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0.0
    # column-stochastic transition: y[u] = sum over neighbors v of x[v]/d(v)
    data = 1.0 / deg[g.nbrs]
    trans = sp.csr_matrix((data, g.nbrs, g.indptr), shape=(n, n))
    x = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    residual = np.inf
    for it in range(max_iter):
        mass = x[dangling].sum()
        x_new = damping * (trans @ x + mass / n) + teleport
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual < tol:
            return x
    raise ConvergenceError("pagerank did not converge", residual, max_iter)


def node_closeness(g: Graph, weighted: bool = False) -> np.ndarray:
    """Component-corrected closeness: (r-1)^2 / ((n-1) * sum of distances).

    r is the number of reachable nodes.  Hop distances by default; with
    ``weighted`` the edge length is 1 - weight (zero-length edges are
    legal).  Nodes with zero total distance score 0, which covers isolated
    nodes and fully zero-distance neighborhoods alike.
    """
    n = g.n
    if n <= 1:
        return np.zeros(n)
    if weighted:
        reach, sumd = _kernels.all_sources_dijkstra_stats(g.indptr, g.nbrs, 1.0 - g.adj_w)
        sumd = np.asarray(sumd, dtype=np.float64)
    else:
        reach, sumd, _ = _kernels.all_sources_bfs_stats(g.indptr, g.nbrs)
        sumd = np.asarray(sumd, dtype=np.float64)
    reach = np.asarray(reach, dtype=np.float64)
    out = np.zeros(n)
    pos = sumd > 0.0
    out[pos] = (reach[pos] - 1.0) ** 2 / ((n - 1.0) * sumd[pos])
    return out


def edge_betweenness(g: Graph, weighted: bool = False) -> np.ndarray:
    """Brandes edge betweenness over unordered node pairs.

    Each pair contributes 1 split evenly across its shortest paths.  With
    ``weighted`` the path length is the sum of 1 - weight per edge.
    """
    if g.m == 0:
        return np.zeros(0)
    if weighted:
        return np.asarray(
            _kernels.edge_betweenness_weighted(g.indptr, g.nbrs, 1.0 - g.adj_w, g.adj_eid, g.m)
        )
    return np.asarray(
        _kernels.edge_betweenness_unweighted(g.indptr, g.nbrs, g.adj_eid, g.m)
    )


__all__ = [
    "ConvergenceError",
    "node_pagerank",
    "node_closeness",
    "edge_betweenness",
    "edge_distances",
]
