import numpy as np
import pytest

from edgeblock.cascade import (
    ORANGE,
    RED,
    WHITE,
    Coloring,
    SeedSet,
    cascade_round,
    enumerate_spread_exact,
    estimate_spread,
    exact_spread_unit_weights,
    run_cascade,
    sample_seed_set,
)
from edgeblock.generators import gnm_random_graph, with_random_weights
from edgeblock.graph import from_edge_arrays, remove_edges
from edgeblock.hardness import expand_to_blocking_instance
from oracle_utils import brute_expected_spread

P3 = from_edge_arrays(3, [0, 1], [1, 2])
HALF_P3 = P3.with_weights(np.array([0.5, 0.5]))


def test_round_single_red_neighbor_probability():
    g = from_edge_arrays(2, [0], [1], [0.7])
    rng = np.random.default_rng(0)
    hits = sum(
        cascade_round(g, Coloring.initial(2, [0]), rng).states[1] == RED
        for _ in range(20000)
    )
    # binomial(20000, 0.7): four sigma is ~260
    assert abs(hits - 14000) < 260


def test_round_two_red_neighbors_combine():
    g = from_edge_arrays(3, [0, 1], [2, 2], [0.5, 0.5])
    rng = np.random.default_rng(1)
    hits = 0
    for _ in range(20000):
        c = Coloring(np.array([RED, RED, WHITE], dtype=np.uint8))
        hits += cascade_round(g, c, rng).states[2] == RED
    # p* = 1 - 0.25 = 0.75; four sigma is ~245
    assert abs(hits - 15000) < 245


def test_round_no_red_neighbors_stays_white():
    g = from_edge_arrays(3, [0], [1], [1.0])
    c = Coloring(np.array([RED, WHITE, WHITE], dtype=np.uint8))
    out = cascade_round(g, c, np.random.default_rng(2))
    assert out.states[2] == WHITE
    assert out.states[0] == ORANGE


def test_run_cascade_unit_chain():
    out = run_cascade(P3, [0], seed=5)
    assert out.orange_count == 3
    assert out.rounds == 3
    assert out.final_coloring.count(RED) == 0


def test_run_cascade_empty_and_full_seeds():
    assert run_cascade(P3, [], seed=1).orange_count == 0
    assert run_cascade(P3, [], seed=1).rounds == 0
    out = run_cascade(P3, [0, 1, 2], seed=1)
    assert out.orange_count == 3 and out.rounds == 1


def test_trajectory_matches_kernel():
    g = with_random_weights(gnm_random_graph(10, 18, 3), 3)
    plain = run_cascade(g, [0, 4], seed=9)
    traced = run_cascade(g, [0, 4], seed=9, record_trajectory=True)
    assert np.array_equal(plain.final_coloring.states, traced.final_coloring.states)
    assert plain.rounds == traced.rounds
    assert len(traced.trajectory) == traced.rounds + 1


def test_state_machine_invariants():
    for seed in range(10):
        g = with_random_weights(gnm_random_graph(12, 24, seed), seed)
        seeds = SeedSet.of([seed % 12, (seed * 5) % 12])
        out = run_cascade(g, seeds, seed=seed)
        states = out.final_coloring.states
        assert set(np.unique(states)) <= {WHITE, ORANGE}
        assert np.all(states[seeds.nodes] == ORANGE)
        assert out.orange_count >= seeds.size
        assert out.rounds <= g.n + 1


def test_estimate_unit_weights_exact():
    mean, se = estimate_spread(P3, [0], 64, master_seed=11)
    assert mean == 3.0 and se == 0.0


def test_estimate_matches_enumeration_on_half_path():
    exact = enumerate_spread_exact(HALF_P3, [0])
    assert exact == 1.75
    mean, se = estimate_spread(HALF_P3, [0], 10000, master_seed=17)
    assert abs(mean - exact) <= 4 * se


def test_estimate_empty_seed_set():
    mean, se = estimate_spread(P3, [], 10, master_seed=1)
    assert mean == 0.0 and se == 0.0


def test_estimate_rejects_zero_samples():
    with pytest.raises(ValueError):
        estimate_spread(P3, [0], 0, master_seed=1)


def test_estimate_deterministic():
    g = with_random_weights(gnm_random_graph(15, 30, 4), 4)
    a = estimate_spread(g, [1, 2], 500, master_seed=77)
    b = estimate_spread(g, [1, 2], 500, master_seed=77)
    c = estimate_spread(g, [1, 2], 500, master_seed=78)
    assert a == b
    assert a != c


def test_enumeration_trivials():
    # single edge with weight p: expected reach 1 + p
    for p in (0.2, 0.6, 1.0):
        g = from_edge_arrays(2, [0], [1], [p])
        assert enumerate_spread_exact(g, [0]) == pytest.approx(1 + p)
    # all unit weights equals reachability
    g = gnm_random_graph(8, 12, 5)
    assert enumerate_spread_exact(g, [0]) == exact_spread_unit_weights(g, [0])


def test_enumeration_matches_independent_oracle():
    for seed in range(6):
        g = with_random_weights(gnm_random_graph(7, 10, seed + 20), seed)
        seeds = [seed % 7]
        assert enumerate_spread_exact(g, seeds) == pytest.approx(
            brute_expected_spread(g, seeds), abs=1e-12)


def test_enumeration_guard():
    g = gnm_random_graph(10, 26, 1)
    with pytest.raises(ValueError):
        enumerate_spread_exact(g, [0])


def test_exact_unit_weights():
    star = from_edge_arrays(5, [0, 0, 0, 0], [1, 2, 3, 4])
    assert exact_spread_unit_weights(star, [0]) == 5
    two = from_edge_arrays(5, [0, 1], [1, 2])  # component {0,1,2} and isolated 3, 4
    assert exact_spread_unit_weights(two, [0]) == 3
    inst = expand_to_blocking_instance(from_edge_arrays(3, [0, 0, 1], [1, 2, 2]))
    assert exact_spread_unit_weights(inst.graph, inst.seeds) == 7
    with pytest.raises(ValueError):
        exact_spread_unit_weights(HALF_P3, [0])


def test_spread_bounds():
    for seed in range(8):
        g = with_random_weights(gnm_random_graph(9, 14, seed + 40), seed)
        seeds = SeedSet.of([0, 3])
        mean, _ = estimate_spread(g, seeds, 300, master_seed=seed)
        exact = enumerate_spread_exact(g, seeds)
        assert seeds.size <= mean <= g.n
        assert seeds.size <= exact <= g.n


def test_monotone_under_blocking():
    for seed in range(10):
        g = gnm_random_graph(9, 13, seed + 60)
        seeds = [0]
        s1 = [0, 3]
        s2 = [0, 3, 7]
        base = enumerate_spread_exact(g, seeds)
        v1 = enumerate_spread_exact(remove_edges(g, s1), seeds)
        v2 = enumerate_spread_exact(remove_edges(g, s2), seeds)
        assert base >= v1 >= v2


def test_sample_seed_set_sizes():
    big = from_edge_arrays(4039, [0], [1])
    assert sample_seed_set(big, 0.001, 1).size == 4
    g1000 = from_edge_arrays(1000, [0], [1])
    assert sample_seed_set(g1000, 0.001, 1).size == 1
    g5 = from_edge_arrays(5, [0], [1])
    assert sample_seed_set(g5, 1.0, 1).size == 5
    with pytest.raises(ValueError):
        sample_seed_set(g5, 0.0, 1)
    with pytest.raises(ValueError):
        sample_seed_set(g5, 1.5, 1)


def test_seed_validation():
    with pytest.raises(ValueError):
        run_cascade(P3, [99], seed=1)
