"""Exhaustive cross-checks relating densest-subgraph and edge-blocking optima.

For a connected graph H the hub expansion builds a unit-weight instance G:
one copy node per node of H, one incidence node per edge of H wired to the
copies of its endpoints, and a hub adjacent to every copy node; the hub is
the only initial spreader.  Blocking k edges of G to maximize the nodes
kept white then mirrors picking k nodes of H to maximize induced edges:

    densest(H, k) = best_blocking(G, k, {hub}) - k          for k >= girth(H)

while below the girth the densest optimum is exactly k - 1 (any k nodes
induce at most k - 1 edges without closing a short cycle, and a connected
k-subgraph achieves it).  Everything here is brute force with hard size
guards; witnesses are re-checkable first lexicographic maximizers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cascade import SeedSet, exact_spread_unit_weights
from .generators import connected_graphs_upto_iso
from .graph import Graph, from_edge_arrays, girth

_MAX_DS_NODES = 18
_MAX_BLOCKING_SUBSETS = 5_000_000


@dataclass(frozen=True)
class BlockingInstance:
    graph: Graph                # unit weights
    node_copies: np.ndarray     # one node per node of the source graph
    edge_nodes: np.ndarray      # one node per edge of the source graph
    hub: int
    seeds: SeedSet


@dataclass(frozen=True)
class BruteForceResult:
    value: int
    witness: tuple


def expand_to_blocking_instance(h: Graph) -> BlockingInstance:
    """Hub expansion of a connected graph (see module docstring)."""
    if h.n == 0:
        raise ValueError("empty source graph")
    reach = _kernels.reach_count(h.indptr, h.nbrs, np.zeros(1, dtype=np.int64))
    if int(reach) != h.n:
        raise ValueError("source graph must be connected")
    n, m = h.n, h.m
    hub = n + m
    eu = []
    ev = []
    for j in range(m):
        y = n + j
        eu.append(y)
        ev.append(int(h.eu[j]))
        eu.append(y)
        ev.append(int(h.ev[j]))
    for i in range(n):
        eu.append(i)
        ev.append(hub)
    g = from_edge_arrays(n + m + 1, np.array(eu, dtype=np.int64), np.array(ev, dtype=np.int64))
    return BlockingInstance(
        graph=g,
        node_copies=np.arange(n, dtype=np.int64),
        edge_nodes=np.arange(n, n + m, dtype=np.int64),
        hub=hub,
        seeds=SeedSet.of([hub]),
    )


def brute_force_densest_subgraph(h: Graph, k: int) -> BruteForceResult:
    """Max induced edge count over all k-node subsets, by enumeration."""
    if not 0 <= k <= h.n:
        raise ValueError("k must satisfy 0 <= k <= n")
    if h.n > _MAX_DS_NODES:
        raise ValueError(f"densest-subgraph enumeration is limited to n <= {_MAX_DS_NODES}")
    adj_bits = np.zeros(h.n, dtype=np.int64)
    for e in range(h.m):
        adj_bits[h.eu[e]] |= 1 << int(h.ev[e])
        adj_bits[h.ev[e]] |= 1 << int(h.eu[e])
    value, comb = _kernels.best_k_subgraph(adj_bits, h.n, k)
    return BruteForceResult(int(value), tuple(int(v) for v in comb))


def induced_edge_count(h: Graph, nodes) -> int:
    """Independent re-evaluation of a densest-subgraph witness."""
    chosen = set(int(v) for v in nodes)
    return sum(1 for e in range(h.m)
               if int(h.eu[e]) in chosen and int(h.ev[e]) in chosen)


def brute_force_edge_blocking(g: Graph, k: int, seeds) -> BruteForceResult:
    """Max white (unreachable) node count over all k-edge removals.

    Requires unit weights, where expected spread is plain reachability.
    """
    if g.m and not np.all(g.w == 1.0):
        raise ValueError("edge-blocking enumeration requires unit weights")
    if not 0 <= k <= g.m:
        raise ValueError("k must satisfy 0 <= k <= m")
    if math.comb(g.m, k) > _MAX_BLOCKING_SUBSETS:
        raise ValueError(
            f"C({g.m}, {k}) subsets exceed the enumeration guard of {_MAX_BLOCKING_SUBSETS}")
    arr = seeds.nodes if isinstance(seeds, SeedSet) else np.unique(
        np.asarray(list(seeds), dtype=np.int64))
    value, comb = _kernels.best_edge_blocking(g.indptr, g.nbrs, g.adj_eid, g.m, k, arr)
    return BruteForceResult(int(value), tuple(int(e) for e in comb))


def white_count_after_blocking(g: Graph, edge_ids, seeds) -> int:
    """Independent re-evaluation of an edge-blocking witness."""
    from .graph import remove_edges

    gb = remove_edges(g, edge_ids)
    return gb.n - exact_spread_unit_weights(gb, seeds)


@dataclass(frozen=True)
class ReductionCheck:
    k: int
    girth_value: float
    mode: str                 # "below_girth" or "expansion"
    opt_ds: int
    opt_eb: int | None
    passed: bool


def verify_reduction(h: Graph, k: int) -> ReductionCheck:
    """Check the optimum identity for one (graph, k) instance.

    Below the girth: densest optimum must equal k - 1.  Otherwise: build
    the hub expansion and check densest(H, k) == blocking(G, k, hub) - k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > h.n:
        raise ValueError("k must not exceed the node count")
    gr = girth(h)
    if k < gr:
        ds = brute_force_densest_subgraph(h, k)
        return ReductionCheck(k, gr, "below_girth", ds.value, None, ds.value == k - 1)
    inst = expand_to_blocking_instance(h)
    ds = brute_force_densest_subgraph(h, k)
    eb = brute_force_edge_blocking(inst.graph, k, inst.seeds)
    return ReductionCheck(k, gr, "expansion", ds.value, eb.value, ds.value == eb.value - k)


def sweep_small_instances(max_n: int) -> list[ReductionCheck]:
    """verify_reduction over every connected graph up to isomorphism with
    n <= max_n and every k in 1..n.

    The k = n boundary is included because it is where the expansion-mode
    identity holds (blocking every hub edge isolates the hub)."""
    checks = []
    for n in range(2, max_n + 1):
        for h in connected_graphs_upto_iso(n):
            for k in range(1, n + 1):
                checks.append(verify_reduction(h, k))
    return checks
