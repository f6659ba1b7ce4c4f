"""Graph generators for experiments and randomized testing."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .graph import Graph, from_edge_arrays
from .seeding import seed_sequence


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(seed_sequence(rng))


def planted_partition(n_blocks: int, block_size: int, p_intra: float, p_inter: float, rng) -> Graph:
    """Planted-partition graph: Bernoulli edges, dense inside blocks."""
    rng = _as_rng(rng)
    n = n_blocks * block_size
    iu, jv = np.triu_indices(n, k=1)
    same = (iu // block_size) == (jv // block_size)
    p = np.where(same, p_intra, p_inter)
    keep = rng.random(iu.shape[0]) < p
    return from_edge_arrays(n, iu[keep], jv[keep])


def gnm_random_graph(n: int, m: int, rng) -> Graph:
    """Uniform graph with exactly m edges (m <= C(n, 2))."""
    rng = _as_rng(rng)
    iu, jv = np.triu_indices(n, k=1)
    if m > iu.shape[0]:
        raise ValueError("too many edges requested")
    idx = np.sort(rng.choice(iu.shape[0], size=m, replace=False))
    return from_edge_arrays(n, iu[idx], jv[idx])


def random_connected_graph(n: int, extra_edges: int, rng) -> Graph:
    """Random tree by sequential attachment plus extra distinct edges."""
    rng = _as_rng(rng)
    edges = {(int(rng.integers(0, i)), i) for i in range(1, n)}
    ncomb = n * (n - 1) // 2
    extra_edges = min(extra_edges, ncomb - len(edges))
    while extra_edges > 0:
        i = int(rng.integers(0, n))
        j = int(rng.integers(0, n))
        if i == j:
            continue
        key = (min(i, j), max(i, j))
        if key in edges:
            continue
        edges.add(key)
        extra_edges -= 1
    if not edges:
        return from_edge_arrays(n, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
    eu, ev = zip(*sorted(edges))
    return from_edge_arrays(n, np.array(eu), np.array(ev))


def with_random_weights(g: Graph, rng) -> Graph:
    """Uniform weights in (0, 1]."""
    rng = _as_rng(rng)
    return g.with_weights(1.0 - rng.random(g.m))


# ---------------------------------------------------------------------------
# exhaustive small-graph enumeration (up to isomorphism)
# ---------------------------------------------------------------------------

_MAX_ENUM_NODES = 6
_iso_cache: dict[int, list[Graph]] = {}


def _edge_index_table(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    lookup = {p: e for e, p in enumerate(pairs)}
    return pairs, lookup


def _connected_mask(mask, n, pairs):
    adj = [[] for _ in range(n)]
    for e, (i, j) in enumerate(pairs):
        if (mask >> e) & 1:
            adj[i].append(j)
            adj[j].append(i)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    cnt = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                cnt += 1
                stack.append(v)
    return cnt == n


def connected_graphs_upto_iso(n: int) -> list[Graph]:
    """All connected graphs on n nodes, one per isomorphism class.

    Canonicalizes every edge bitmask as the minimum over all node
    relabelings; exponential, guarded to n <= 6 (143 graphs in total for
    n in 1..6).
    """
    if not 1 <= n <= _MAX_ENUM_NODES:
        raise ValueError(f"enumeration supports 1 <= n <= {_MAX_ENUM_NODES}")
    if n in _iso_cache:
        return _iso_cache[n]
    if n == 1:
        out = [from_edge_arrays(1, [], [])]
        _iso_cache[n] = out
        return out

    pairs, lookup = _edge_index_table(n)
    ecount = len(pairs)
    masks = np.arange(1 << ecount, dtype=np.int64)
    canon = masks.copy()
    for perm in permutations(range(n)):
        mapped = np.zeros_like(masks)
        for e, (i, j) in enumerate(pairs):
            pi, pj = perm[i], perm[j]
            target = lookup[(pi, pj) if pi < pj else (pj, pi)]
            mapped |= ((masks >> e) & 1) << target
        np.minimum(canon, mapped, out=canon)

    reps = np.unique(canon)
    out = []
    for mask in reps.tolist():
        if not _connected_mask(mask, n, pairs):
            continue
        eu = [pairs[e][0] for e in range(ecount) if (mask >> e) & 1]
        ev = [pairs[e][1] for e in range(ecount) if (mask >> e) & 1]
        out.append(from_edge_arrays(n, np.array(eu, dtype=np.int64), np.array(ev, dtype=np.int64)))
    _iso_cache[n] = out
    return out
