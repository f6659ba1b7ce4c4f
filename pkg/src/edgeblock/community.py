"""Louvain community detection and the budgeted resolution sweep.

Louvain greedily maximizes modularity with a resolution parameter:

    Q = sum over communities c of [ e_c / m  -  resolution * (d_c / 2m)^2 ]

where e_c counts intra-community edges and d_c sums member degrees.  By
default the unweighted structure is used (edge weights do not enter Q);
``use_weights`` switches to weighted totals.

The sweep grows the resolution geometrically, re-running Louvain several
times per step (the algorithm is seeded-random), and keeps the largest
inter-community edge set that still fits the blocking budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph
from .seeding import DEFAULT_SEED, rng_for, seed_sequence


@dataclass(frozen=True)
class Partition:
    """Community id per node; ids are dense 0..c-1."""

    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        if labels.size:
            c = int(labels.max()) + 1
            if labels.min() < 0 or np.unique(labels).size != c:
                raise ValueError("community ids must be dense 0..c-1")

    @property
    def n_communities(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0


def _dense_relabel(labels: np.ndarray) -> np.ndarray:
    """Relabel community ids densely by first occurrence in node order."""
    out = np.empty_like(labels)
    mapping: dict[int, int] = {}
    for i, c in enumerate(labels):
        c = int(c)
        if c not in mapping:
            mapping[c] = len(mapping)
        out[i] = mapping[c]
    return out


def modularity(g: Graph, partition: Partition, resolution: float = 1.0,
               use_weights: bool = False) -> float:
    """Direct evaluation of Q for the given partition."""
    labels = partition.labels
    if labels.shape[0] != g.n:
        raise ValueError("partition size does not match node count")
    if g.m == 0:
        return 0.0
    ew = g.w if use_weights else np.ones(g.m)
    total = float(ew.sum())
    c = partition.n_communities
    intra = np.zeros(c)
    same = labels[g.eu] == labels[g.ev]
    np.add.at(intra, labels[g.eu[same]], ew[same])
    dtot = np.zeros(c)
    np.add.at(dtot, labels[g.eu], ew)
    np.add.at(dtot, labels[g.ev], ew)
    return float((intra / total - resolution * (dtot / (2.0 * total)) ** 2).sum())


def _build_level_csr(n, eu, ev, w, loops):
    half = np.concatenate([eu, ev])
    other = np.concatenate([ev, eu])
    ws = np.concatenate([w, w])
    order = np.lexsort((other, half))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, half + 1, 1)
    np.cumsum(indptr, out=indptr)
    nbrs = other[order]
    adj_w = ws[order]
    node_k = np.zeros(n)
    np.add.at(node_k, eu, w)
    np.add.at(node_k, ev, w)
    node_k += 2.0 * loops
    return indptr, nbrs, adj_w, node_k


def _aggregate(labels, eu, ev, w, loops):
    nc = int(labels.max()) + 1
    cu = labels[eu]
    cv = labels[ev]
    new_loops = np.zeros(nc)
    np.add.at(new_loops, labels, loops)
    same = cu == cv
    np.add.at(new_loops, cu[same], w[same])
    lo = np.minimum(cu[~same], cv[~same])
    hi = np.maximum(cu[~same], cv[~same])
    if lo.size:
        keys = lo * nc + hi
        uniq, inv = np.unique(keys, return_inverse=True)
        new_w = np.zeros(uniq.size)
        np.add.at(new_w, inv, w[~same])
        new_eu = (uniq // nc).astype(np.int64)
        new_ev = (uniq % nc).astype(np.int64)
    else:
        new_eu = np.zeros(0, dtype=np.int64)
        new_ev = np.zeros(0, dtype=np.int64)
        new_w = np.zeros(0)
    return new_eu, new_ev, new_w, new_loops


def louvain_partition(g: Graph, resolution: float, rng,
                      use_weights: bool = False) -> Partition:
    """Two-phase Louvain: greedy local moves, then graph aggregation,
    repeated until the community count stops shrinking.

    The node visit order at every level is a fresh shuffle from ``rng``,
    so distinct seeds explore distinct local optima while a fixed seed is
    fully reproducible.
    """
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(seed_sequence(rng))
    if g.m == 0:
        return Partition(np.arange(g.n, dtype=np.int64))

    eu = g.eu.astype(np.int64)
    ev = g.ev.astype(np.int64)
    w = g.w.astype(np.float64) if use_weights else np.ones(g.m)
    loops = np.zeros(g.n)
    mapping = np.arange(g.n, dtype=np.int64)
    size = g.n

    while True:
        indptr, nbrs, adj_w, node_k = _build_level_csr(size, eu, ev, w, loops)
        two_m = float(node_k.sum())
        if two_m == 0.0:
            break
        comm = np.arange(size, dtype=np.int64)
        comm_tot = node_k.copy()
        order = rng.permutation(size).astype(np.int64)
        while True:
            moves = _kernels.louvain_local_pass(
                indptr, nbrs, adj_w, node_k, comm, comm_tot, order,
                float(resolution), two_m,
            )
            if moves == 0:
                break
        labels = _dense_relabel(comm)
        ncomm = int(labels.max()) + 1
        mapping = labels[mapping]
        if ncomm == size:
            break
        eu, ev, w, loops = _aggregate(labels, eu, ev, w, loops)
        size = ncomm
        if size == 1:
            break
    return Partition(_dense_relabel(mapping))


def inter_community_edges(g: Graph, partition: Partition) -> np.ndarray:
    """Sorted ids of edges whose endpoints lie in different communities."""
    labels = partition.labels
    if labels.shape[0] != g.n:
        raise ValueError("partition size does not match node count")
    return np.flatnonzero(labels[g.eu] != labels[g.ev]).astype(np.int64)


@dataclass(frozen=True)
class SweepParams:
    resolution: float = 0.01     # starting resolution
    factor: float = 1.05         # geometric growth per outer step
    h1: int = 5                  # outer overflow repetitions before stopping
    h2: int = 5                  # Louvain retries per resolution
    budget: int = 0              # max edges to block
    master_seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.resolution <= 0.0:
            raise ValueError("resolution must be positive")
        if self.factor <= 1.0:
            raise ValueError("factor must exceed 1")
        if self.h1 < 1 or self.h2 < 1:
            raise ValueError("h1 and h2 must be >= 1")
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")


def resolution_sweep(g: Graph, params: SweepParams,
                     count_on_any_overflow: bool = False,
                     return_trace: bool = False):
    """Largest inter-community edge set within the budget.

    Walks the resolution upward by ``factor``; at each step runs Louvain
    ``h2`` times and keeps the biggest edge set not exceeding the budget.
    The stop counter advances each step whose last (or, with
    ``count_on_any_overflow``, any) candidate overflowed the budget, and
    the loop ends once it exceeds ``h1``.  Returns sorted edge ids, of
    size at most the budget and possibly empty.
    """
    k = params.budget
    if k >= g.m:
        result = np.arange(g.m, dtype=np.int64)
        return (result, []) if return_trace else result

    best = np.zeros(0, dtype=np.int64)
    trace = []
    r = params.resolution
    count = 0
    outer = 0
    while count <= params.h1:
        overflow = False
        last_overflow = False
        for inner in range(params.h2):
            rng = rng_for(params.master_seed, outer, inner)
            part = louvain_partition(g, r, rng)
            cand = inter_community_edges(g, part)
            size = int(cand.shape[0])
            if return_trace:
                trace.append((r, size))
            if best.shape[0] < size <= k:
                best = cand
            last_overflow = size > k
            overflow = overflow or last_overflow
        r *= params.factor
        if (overflow if count_on_any_overflow else last_overflow):
            count += 1
        outer += 1
    return (best, trace) if return_trace else best
