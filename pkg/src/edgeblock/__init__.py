"""edgeblock: independent-cascade spread simulation and edge blocking.

A library and CLI for simulating information spread on undirected weighted
graphs with the independent cascade model, comparing edge-blocking
countermeasures (centrality baselines and a community-based resolution
sweep), and cross-checking densest-subgraph / edge-blocking optimum
identities on small instances by brute force.
"""

__version__ = "0.1.0"

from ._accel import NUMBA_ENABLED
from .cascade import (
    CascadeOutcome,
    Coloring,
    SeedSet,
    cascade_round,
    enumerate_spread_exact,
    estimate_spread,
    exact_spread_unit_weights,
    run_cascade,
    sample_seed_set,
)
from .centrality import ConvergenceError, edge_betweenness, node_closeness, node_pagerank
from .community import (
    Partition,
    SweepParams,
    inter_community_edges,
    louvain_partition,
    modularity,
    resolution_sweep,
)
from .evaluation import (
    ContainmentReport,
    ExperimentConfig,
    containment_factor,
    export_csv,
    export_report,
    export_svg,
    run_experiment,
    summarize_report,
)
from .graph import (
    Graph,
    GraphStats,
    LoadReport,
    ParseError,
    assign_jaccard_weights,
    edge_distance,
    from_edge_arrays,
    girth,
    graph_stats,
    parse_edge_list,
    remove_edges,
    write_edge_list,
)
from .hardness import (
    BlockingInstance,
    BruteForceResult,
    ReductionCheck,
    brute_force_densest_subgraph,
    brute_force_edge_blocking,
    expand_to_blocking_instance,
    sweep_small_instances,
    verify_reduction,
)
from .strategies import (
    SCORE_STRATEGIES,
    STRATEGIES,
    blocked_edges,
    score_edges,
    select_blocked_edges,
)
