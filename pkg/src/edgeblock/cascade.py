"""Independent cascade dynamics and spread estimation.

Node states: white (has not heard), red (heard, will spread once), orange
(heard, done spreading).  In each synchronous round a white node v with red
neighbors turns red with probability 1 - prod(1 - w(v, v')) over its red
neighbors, every red node turns orange, and orange is absorbing.  The
process runs to quiescence (no red nodes), at most n+1 rounds.

Monte Carlo estimation draws one uniform per exposure attempt; each
replicate's stream is a pure function of (master_seed, replicate index) so
estimates are reproducible regardless of execution order.  Two exact
routes exist for validation: plain reachability when all weights are 1,
and full live-edge enumeration for tiny graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._accel import NUMBA_ENABLED, rng_u01, seed_to_state
from .graph import Graph
from .seeding import seed_sequence

WHITE = _kernels.WHITE
RED = _kernels.RED
ORANGE = _kernels.ORANGE

_MAX_ENUM_EDGES = 25


@dataclass(frozen=True)
class Coloring:
    """One state per node, values in {WHITE, RED, ORANGE}."""

    states: np.ndarray

    @classmethod
    def initial(cls, n: int, seeds) -> "Coloring":
        states = np.zeros(n, dtype=np.uint8)
        states[np.asarray(list(seeds), dtype=np.int64)] = RED
        return cls(states)

    def count(self, state: int) -> int:
        return int(np.count_nonzero(self.states == state))

    @property
    def n(self) -> int:
        return int(self.states.shape[0])


@dataclass(frozen=True)
class SeedSet:
    """Initially-red nodes, stored sorted and deduplicated."""

    nodes: np.ndarray

    @classmethod
    def of(cls, nodes) -> "SeedSet":
        arr = np.unique(np.asarray(list(nodes), dtype=np.int64))
        return cls(arr)

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])


@dataclass(frozen=True)
class CascadeOutcome:
    final_coloring: Coloring
    rounds: int
    orange_count: int
    trajectory: tuple = field(default=(), compare=False)


def _seed_array(g: Graph, seeds) -> np.ndarray:
    if isinstance(seeds, SeedSet):
        arr = seeds.nodes
    else:
        arr = np.unique(np.asarray(list(seeds), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= g.n):
        raise ValueError("seed node out of range")
    return arr


def cascade_round(g: Graph, coloring: Coloring, rng: np.random.Generator) -> Coloring:
    """One synchronous update step.

    Attempts are evaluated per (red node, white neighbor) pair in node and
    adjacency order, one uniform draw each, so a white node with several
    red neighbors stays white with prod(1 - w).
    """
    states = coloring.states
    out = states.copy()
    newly = np.zeros(g.n, dtype=bool)
    reds = np.flatnonzero(states == RED)
    for u in reds:
        for j in range(g.indptr[u], g.indptr[u + 1]):
            v = g.nbrs[j]
            if states[v] == WHITE and rng.random() < g.adj_w[j]:
                newly[v] = True
    out[reds] = ORANGE
    out[newly] = RED
    return Coloring(out)


def run_cascade(g: Graph, seeds, seed: int, record_trajectory: bool = False) -> CascadeOutcome:
    """Full cascade with the replicate stream derived from ``seed``."""
    arr = _seed_array(g, seeds)
    bits = seed_sequence(seed).generate_state(1, np.uint64).view(np.int64)[0]
    if not record_trajectory:
        state, rounds = _kernels.cascade_run(g.indptr, g.nbrs, g.adj_w, arr, bits)
        final = Coloring(np.asarray(state))
        return CascadeOutcome(final, int(rounds), final.count(ORANGE))
    return _run_with_trajectory(g, arr, bits)


def _run_with_trajectory(g: Graph, arr: np.ndarray, bits) -> CascadeOutcome:
    # python mirror of the kernel loop, consuming the identical stream
    state = np.zeros(g.n, dtype=np.uint8)
    state[arr] = RED
    frontier = list(arr)
    rng = seed_to_state(bits)
    snaps = [Coloring(state.copy())]
    rounds = 0
    while frontier:
        rounds += 1
        newly: list[int] = []
        marked = np.zeros(g.n, dtype=bool)
        for u in frontier:
            for j in range(g.indptr[u], g.indptr[u + 1]):
                v = int(g.nbrs[j])
                if state[v] == WHITE:
                    rng, draw = rng_u01(rng)
                    if NUMBA_ENABLED:
                        rng = np.uint64(rng)
                    if draw < g.adj_w[j] and not marked[v]:
                        marked[v] = True
                        newly.append(v)
        state[frontier] = ORANGE
        state[newly] = RED
        frontier = newly
        snaps.append(Coloring(state.copy()))
    final = Coloring(state)
    return CascadeOutcome(final, rounds, final.count(ORANGE), tuple(snaps))


def estimate_spread(g: Graph, seeds, samples: int, master_seed: int, seed_bits=None):
    """Monte Carlo estimate of the expected final orange count.

    Returns (mean, standard error).  ``seed_bits`` overrides the derived
    per-replicate streams; callers use it to share streams across estimates
    (common random numbers).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    arr = _seed_array(g, seeds)
    if seed_bits is None:
        seed_bits = seed_sequence(master_seed).generate_state(samples, np.uint64).view(np.int64)
    else:
        seed_bits = np.asarray(seed_bits, dtype=np.int64)
        if seed_bits.shape[0] != samples:
            raise ValueError("seed_bits length must equal samples")
    total, total_sq = _kernels.cascade_batch(g.indptr, g.nbrs, g.adj_w, arr, seed_bits)
    mean = total / samples
    if samples == 1:
        return mean, 0.0
    var = (total_sq - total * total / samples) / (samples - 1)
    if var < 0.0:
        var = 0.0
    return mean, math.sqrt(var / samples)


def exact_spread_unit_weights(g: Graph, seeds) -> int:
    """Exact expected spread when every weight is 1: plain reachability."""
    if g.m and not np.all(g.w == 1.0):
        raise ValueError("exact reachability spread requires all weights equal to 1")
    arr = _seed_array(g, seeds)
    if arr.size == 0:
        return 0
    return int(_kernels.reach_count(g.indptr, g.nbrs, arr))


def enumerate_spread_exact(g: Graph, seeds) -> float:
    """Exact expected spread by summing over all live-edge subsets.

    Each edge is independently live with probability equal to its weight;
    the expected spread is sum over subsets of P(subset) * |reachable|.
    Guarded to m <= 25.
    """
    if g.m > _MAX_ENUM_EDGES:
        raise ValueError(f"live-edge enumeration is limited to m <= {_MAX_ENUM_EDGES}")
    arr = _seed_array(g, seeds)
    if arr.size == 0:
        return 0.0
    return float(_kernels.expected_reach_live_edges(g.eu, g.ev, g.w, g.n, arr))


def sample_seed_set(g: Graph, fraction: float, rng) -> SeedSet:
    """Uniform seed set of size max(1, round(fraction * n))."""
    if not 0.0 < fraction <= 1.0:
        raise ValueError("fraction must lie in (0, 1]")
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(seed_sequence(rng))
    size = max(1, round(fraction * g.n))
    size = min(size, g.n)
    return SeedSet.of(rng.choice(g.n, size=size, replace=False))
