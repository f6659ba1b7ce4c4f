"""Command-line front end.

Subcommands: stats, weights, simulate, block, evaluate, hardness.
Exit codes: 0 success, 1 usage error, 2 runtime error.  All randomness
flows from --seed (default 42, never wall clock), so identical invocations
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cascade import SeedSet, estimate_spread, sample_seed_set
from .community import SweepParams
from .evaluation import (
    ExperimentConfig,
    budget_to_edge_count,
    export_csv,
    export_svg,
    run_experiment,
)
from .graph import (
    Graph,
    assign_jaccard_weights,
    girth,
    graph_stats,
    parse_edge_list,
    write_edge_list,
)
from .hardness import sweep_small_instances, verify_reduction
from .seeding import DEFAULT_SEED, rng_for
from .strategies import STRATEGIES, blocked_edges


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_graph_arg(p, weights_default="jaccard"):
    p.add_argument("--graph", required=True, help="edge-list file (.gz ok)")
    p.add_argument(
        "--weights", choices=("jaccard", "unit", "file"), default=weights_default,
        help="edge weights: recompute by shared-neighbor similarity, force 1, "
             "or keep the file's third column (default: %(default)s)")


def _load_graph(args) -> Graph:
    g = parse_edge_list(args.graph)
    if args.weights == "jaccard":
        return assign_jaccard_weights(g)
    if args.weights == "unit":
        return g.with_weights(np.ones(g.m))
    return g


def _parse_budgets(text: str):
    """Either 'LO..HI' integer percents or a comma list of percents/fractions."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi.rstrip("%"))
        if not 1 <= lo <= hi <= 100:
            raise ValueError(f"bad budget range {text!r}")
        return tuple(i / 100.0 for i in range(lo, hi + 1))
    out = []
    for tok in text.split(","):
        tok = tok.strip().rstrip("%")
        val = float(tok)
        if val >= 1.0:
            val /= 100.0
        if not 0.0 < val <= 1.0:
            raise ValueError(f"bad budget {tok!r}")
        out.append(val)
    return tuple(out)


def build_parser() -> _Parser:
    parser = _Parser(prog="edgeblock", description=__doc__)
    parser.add_argument("--version", action="version", version=f"edgeblock {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="structural summary of a graph")
    _add_graph_arg(p, weights_default="file")

    p = sub.add_parser("weights", help="write a shared-neighbor-weighted edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True, help="output edge-list path")

    p = sub.add_parser("simulate", help="Monte Carlo spread estimate")
    _add_graph_arg(p)
    p.add_argument("--seed-fraction", type=float, default=0.001,
                   help="seed-set size as a fraction of n (default: %(default)s)")
    p.add_argument("--seed-nodes", default=None,
                   help="comma list of seed node ids (overrides --seed-fraction)")
    p.add_argument("--samples", type=int, default=1000,
                   help="replicates (default: %(default)s)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="master seed (default: %(default)s)")

    p = sub.add_parser("block", help="edge ids blocked by a strategy")
    _add_graph_arg(p)
    p.add_argument("--strategy", required=True, choices=STRATEGIES)
    p.add_argument("--budget-frac", type=float, default=None,
                   help="budget as a fraction of m")
    p.add_argument("--k", type=int, default=None, help="budget as an edge count")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="write blocked edges here instead of stdout")
    _add_sweep_args(p)

    p = sub.add_parser("evaluate", help="containment-factor experiment grid")
    _add_graph_arg(p)
    p.add_argument("--strategies", default="community,rndm",
                   help="comma list of strategy tokens (default: %(default)s)")
    p.add_argument("--budgets", default="1..20",
                   help="'LO..HI' integer percents or comma percents/fractions "
                        "(default: %(default)s)")
    p.add_argument("--seed-sets", type=int, default=10,
                   help="seed-set repetitions (default: %(default)s)")
    p.add_argument("--cascades", type=int, default=10,
                   help="cascade replicates per seed set (default: %(default)s)")
    p.add_argument("--seed-fraction", type=float, default=0.001,
                   help="seed-set size fraction (default: %(default)s)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="master seed (default: %(default)s)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--network", default=None,
                   help="network name for reports (default: graph file stem)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads, 0 = auto (default: %(default)s)")
    p.add_argument("--no-crn", action="store_true",
                   help="disable common random numbers between before/after estimates")
    _add_sweep_args(p)

    p = sub.add_parser("hardness", help="brute-force optimum identity checks")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--graph", default=None, help="edge-list file of the source graph")
    p.add_argument("--k", type=int, default=None, help="subset/budget size")
    p.add_argument("--sweep-all-small", type=int, default=None, metavar="N",
                   help="check every connected graph up to isomorphism with <= N nodes")
    return parser


def _add_sweep_args(p):
    p.add_argument("--resolution", type=float, default=0.01,
                   help="community sweep: starting resolution (default: %(default)s)")
    p.add_argument("--factor", type=float, default=1.05,
                   help="community sweep: resolution growth factor (default: %(default)s)")
    p.add_argument("--h1", type=int, default=5,
                   help="community sweep: overflow repetitions (default: %(default)s)")
    p.add_argument("--h2", type=int, default=5,
                   help="community sweep: retries per resolution (default: %(default)s)")


def _sweep_from_args(args) -> SweepParams:
    return SweepParams(resolution=args.resolution, factor=args.factor,
                       h1=args.h1, h2=args.h2)


def _cmd_stats(args) -> int:
    g = _load_graph(args)
    s = graph_stats(g)
    d = s.diameter if s.connected else f"inf (largest component: {s.diameter})"
    print(f"n          {s.n}")
    print(f"m          {s.m}")
    print(f"d_avg      {s.d_avg:.6g}")
    print(f"d_max      {s.d_max}")
    print(f"diameter   {d}")
    print(f"k_avg      {s.k_avg:.6g}")
    print(f"triangles  {s.triangles}")
    return 0


def _cmd_weights(args) -> int:
    g = assign_jaccard_weights(parse_edge_list(args.graph))
    write_edge_list(g, args.out)
    print(f"wrote {g.m} weighted edges to {args.out}")
    return 0


def _cmd_simulate(args) -> int:
    g = _load_graph(args)
    if args.seed_nodes is not None:
        seeds = SeedSet.of(int(t) for t in args.seed_nodes.split(","))
    else:
        seeds = sample_seed_set(g, args.seed_fraction, rng_for(args.seed, 0))
    mean, stderr = estimate_spread(g, seeds, args.samples, args.seed)
    print(f"seeds={seeds.size} samples={args.samples} phi_hat={mean!r} stderr={stderr!r}")
    return 0


def _cmd_block(args) -> int:
    g = _load_graph(args)
    if (args.k is None) == (args.budget_frac is None):
        raise UsageError("give exactly one of --k or --budget-frac")
    k = args.k if args.k is not None else budget_to_edge_count(args.budget_frac, g.m)
    ids = blocked_edges(g, args.strategy, k, args.seed, sweep=_sweep_from_args(args))
    lines = [f"{g.label_of(int(g.eu[e]))} {g.label_of(int(g.ev[e]))}" for e in ids]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        Path(args.out).write_text(text)
        print(f"blocked {len(ids)} edges -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_evaluate(args) -> int:
    g = _load_graph(args)
    network = args.network or Path(args.graph).name.split(".")[0]
    cfg = ExperimentConfig(
        network=network,
        strategies=tuple(t.strip() for t in args.strategies.split(",") if t.strip()),
        budget_fractions=_parse_budgets(args.budgets),
        seed_fraction=args.seed_fraction,
        seed_set_reps=args.seed_sets,
        cascade_reps=args.cascades,
        master_seed=args.seed,
        common_random_numbers=not args.no_crn,
        sweep=_sweep_from_args(args),
        threads=args.threads,
    )
    report = run_experiment(g, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    details = out / f"{network}_details.csv"
    aggregates = out / f"{network}_aggregates.csv"
    svg = out / f"{network}_cf.svg"
    export_csv(report, details, aggregates)
    export_svg(report, svg)
    print(f"wrote {details}")
    print(f"wrote {aggregates}")
    print(f"wrote {svg}")
    return 0


def _print_check(check) -> None:
    gr = "inf" if math.isinf(check.girth_value) else int(check.girth_value)
    eb = "-" if check.opt_eb is None else check.opt_eb
    status = "pass" if check.passed else "FAIL"
    print(f"k={check.k:<3d} girth={gr:<4} mode={check.mode:<12} "
          f"opt_ds={check.opt_ds:<4d} opt_eb={eb:<4} {status}")


def _cmd_hardness(args) -> int:
    ran = False
    failed = 0
    if args.sweep_all_small is not None:
        checks = sweep_small_instances(args.sweep_all_small)
        for c in checks:
            _print_check(c)
        failed += sum(1 for c in checks if not c.passed)
        print(f"{len(checks)} checks, {failed} failures")
        ran = True
    if args.graph is not None:
        if args.k is None:
            raise UsageError("--k is required with --graph")
        h = parse_edge_list(args.graph)
        check = verify_reduction(h, args.k)
        _print_check(check)
        failed += 0 if check.passed else 1
        ran = True
    if not ran:
        raise UsageError("give --graph with --k, or --sweep-all-small N")
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "weights": _cmd_weights,
    "simulate": _cmd_simulate,
    "block": _cmd_block,
    "evaluate": _cmd_evaluate,
    "hardness": _cmd_hardness,
}


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:      # --help / --version
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
