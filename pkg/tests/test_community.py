import numpy as np
import pytest

from edgeblock.community import (
    Partition,
    SweepParams,
    inter_community_edges,
    louvain_partition,
    modularity,
    resolution_sweep,
)
from edgeblock.generators import gnm_random_graph, planted_partition
from edgeblock.graph import from_edge_arrays
from edgeblock.seeding import rng_for
from oracle_utils import best_modularity_exhaustive

# two triangles joined by one bridge: nodes 0-2 and 3-5, bridge (2, 3)
TT = from_edge_arrays(6, [0, 0, 1, 2, 3, 3, 4], [1, 2, 2, 3, 4, 5, 5])
K4 = from_edge_arrays(4, [0, 0, 0, 1, 1, 2], [1, 2, 3, 2, 3, 3])


def _same_partition(a, b):
    # equality up to community renaming
    return len({(int(x), int(y)) for x, y in zip(a, b)}) == len(set(map(int, a))) == len(set(map(int, b)))


def test_partition_validation():
    Partition(np.array([0, 1, 0]))
    with pytest.raises(ValueError):
        Partition(np.array([0, 2, 0]))  # not dense
    with pytest.raises(ValueError):
        Partition(np.array([-1, 0]))


def test_modularity_single_community_zero():
    for g in (K4, TT):
        q = modularity(g, Partition(np.zeros(g.n, dtype=np.int64)), 1.0)
        assert q == pytest.approx(0.0, abs=1e-15)


def test_modularity_singletons():
    g = K4
    q = modularity(g, Partition(np.arange(4)), 1.0)
    deg = g.degrees
    expect = -float(((deg / (2.0 * g.m)) ** 2).sum())
    assert q == pytest.approx(expect, abs=1e-15)


def test_modularity_two_triangles():
    q = modularity(TT, Partition(np.array([0, 0, 0, 1, 1, 1])), 1.0)
    assert q == pytest.approx(5 / 14, abs=1e-12)


def test_louvain_edgeless_graph():
    g = from_edge_arrays(5, [], [])
    part = louvain_partition(g, 1.0, rng_for(1, 0))
    assert part.labels.tolist() == [0, 1, 2, 3, 4]


def test_louvain_k4_single_community():
    # exhaustive check over all 15 partitions: the single block is optimal
    best_q, _ = best_modularity_exhaustive(K4, 1.0)
    for seed in range(5):
        part = louvain_partition(K4, 1.0, rng_for(seed, 0))
        assert part.n_communities == 1
        assert modularity(K4, part, 1.0) == pytest.approx(best_q, abs=1e-12)


def test_louvain_recovers_triangles():
    best_q, best_labels = best_modularity_exhaustive(TT, 1.0)
    assert _same_partition(best_labels, [0, 0, 0, 1, 1, 1])
    for seed in range(5):
        part = louvain_partition(TT, 1.0, rng_for(seed, 1))
        assert _same_partition(part.labels, [0, 0, 0, 1, 1, 1])
        assert modularity(TT, part, 1.0) == pytest.approx(best_q, abs=1e-12)


def test_louvain_improves_on_singletons():
    for seed in range(6):
        g = gnm_random_graph(16, 32, seed)
        part = louvain_partition(g, 1.0, rng_for(seed, 2))
        q0 = modularity(g, Partition(np.arange(g.n)), 1.0)
        assert modularity(g, part, 1.0) >= q0 - 1e-12


def test_louvain_deterministic_per_seed():
    g = planted_partition(3, 8, 0.7, 0.05, 4)
    a = louvain_partition(g, 1.0, rng_for(9, 0)).labels
    b = louvain_partition(g, 1.0, rng_for(9, 0)).labels
    assert np.array_equal(a, b)


def test_louvain_high_resolution_singletons():
    g = gnm_random_graph(10, 20, 7)
    part = louvain_partition(g, float(4 * g.m), rng_for(3, 0))
    assert part.n_communities == g.n


def test_inter_community_edges_trivials():
    assert inter_community_edges(TT, Partition(np.zeros(6, dtype=np.int64))).size == 0
    assert inter_community_edges(TT, Partition(np.arange(6))).size == TT.m
    bridge_only = inter_community_edges(TT, Partition(np.array([0, 0, 0, 1, 1, 1])))
    assert bridge_only.tolist() == [3]
    u, v, _ = TT.edge_tuple(3)
    assert (u, v) == (2, 3)


def test_sweep_finds_bridge():
    params = SweepParams(resolution=0.1, factor=1.05, h1=5, h2=5, budget=1, master_seed=21)
    assert resolution_sweep(TT, params).tolist() == [3]


def test_sweep_guard_paths():
    assert resolution_sweep(TT, SweepParams(budget=0, master_seed=1)).size == 0
    assert resolution_sweep(TT, SweepParams(budget=TT.m, master_seed=1)).tolist() == list(range(TT.m))
    assert resolution_sweep(TT, SweepParams(budget=99, master_seed=1)).size == TT.m


def test_sweep_param_validation():
    with pytest.raises(ValueError):
        SweepParams(resolution=0.0)
    with pytest.raises(ValueError):
        SweepParams(factor=1.0)
    with pytest.raises(ValueError):
        SweepParams(h1=0)
    with pytest.raises(ValueError):
        SweepParams(budget=-1)


def test_sweep_contract_randomized():
    rng = np.random.default_rng(5)
    for trial in range(12):
        n = int(rng.integers(6, 24))
        m = int(rng.integers(n - 1, min(n * (n - 1) // 2, 3 * n)))
        g = gnm_random_graph(n, m, int(rng.integers(0, 1 << 30)))
        k = int(rng.integers(0, g.m + 2))
        params = SweepParams(resolution=0.05, factor=1.3, h1=2, h2=2,
                             budget=k, master_seed=trial)
        out = resolution_sweep(g, params)
        assert out.size <= k or k >= g.m
        assert np.all(out >= 0) and np.all(out < g.m)
        assert np.array_equal(np.unique(out), out)


def test_sweep_returns_max_within_budget():
    g = planted_partition(3, 6, 0.8, 0.1, 13)
    params = SweepParams(resolution=0.05, factor=1.2, h1=3, h2=3, budget=g.m // 3,
                         master_seed=5)
    out, trace = resolution_sweep(g, params, return_trace=True)
    sizes_ok = [s for _, s in trace if s <= params.budget]
    assert out.size == max(sizes_ok, default=0)


def test_sweep_deterministic():
    g = planted_partition(3, 6, 0.8, 0.1, 13)
    params = SweepParams(budget=5, master_seed=33)
    a = resolution_sweep(g, params)
    b = resolution_sweep(g, params)
    assert np.array_equal(a, b)


def test_weighted_modularity_switch():
    g = TT.with_weights(np.array([0.5, 0.5, 0.5, 0.1, 0.5, 0.5, 0.5]))
    part = Partition(np.array([0, 0, 0, 1, 1, 1]))
    q_struct = modularity(g, part, 1.0)
    q_weight = modularity(g, part, 1.0, use_weights=True)
    assert q_struct == pytest.approx(5 / 14, abs=1e-12)
    assert q_weight != pytest.approx(q_struct, abs=1e-6)
    # weighted Louvain accepts the switch and still returns a valid partition
    p2 = louvain_partition(g, 1.0, rng_for(2, 0), use_weights=True)
    assert p2.labels.shape[0] == g.n
