"""Containment-factor experiments: strategies x budgets x random seed sets.

The containment factor of a blocked edge set is the percentage reduction
of the expected final orange count:

    cf = 100 * (phi_before - phi_after) / phi_before

For each seed set the baseline phi_before is estimated once and shared
across strategies and budgets, and (by default) phi_after replicates reuse
the same per-replicate random streams; both choices cut variance out of
the comparison without biasing it.  Every stream derives from the master
seed plus grid coordinates, so output is byte-identical across runs and
worker counts.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import strategies as strategies_mod
from .cascade import estimate_spread, sample_seed_set
from .community import SweepParams
from .graph import Graph, remove_edges
from .seeding import (
    DEFAULT_SEED,
    TAG_CASCADE,
    TAG_CASCADE_INDEP,
    TAG_SEED_SETS,
    replicate_seed_bits,
    rng_for,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET_FRACTIONS = tuple(i / 100.0 for i in range(1, 21))


def containment_factor(phi_before: float, phi_after: float) -> float:
    """Percentage of the baseline spread removed by blocking."""
    if phi_before <= 0.0:
        raise ValueError("containment factor undefined for phi_before <= 0")
    return 100.0 * (phi_before - phi_after) / phi_before


@dataclass(frozen=True)
class ExperimentConfig:
    network: str = "network"
    strategies: tuple = ("community", "rndm")
    budget_fractions: tuple = DEFAULT_BUDGET_FRACTIONS
    seed_fraction: float = 0.001
    seed_set_reps: int = 10
    cascade_reps: int = 10
    master_seed: int = DEFAULT_SEED
    common_random_numbers: bool = True
    sweep: SweepParams = field(default_factory=SweepParams)
    threads: int = 1
    pagerank_damping: float = 0.85

    def __post_init__(self):
        for f in self.budget_fractions:
            if not 0.0 < f <= 1.0:
                raise ValueError("budget fractions must lie in (0, 1]")
        if self.seed_set_reps < 1 or self.cascade_reps < 1:
            raise ValueError("repetition counts must be >= 1")
        for s in self.strategies:
            strategies_mod.strategy_code(s)


@dataclass(frozen=True)
class DetailRow:
    strategy: str
    budget_fraction: float
    seed_set_index: int
    phi_before: float
    phi_after: float
    cf: float


@dataclass(frozen=True)
class AggregateRow:
    strategy: str
    budget_fraction: float
    cf_mean: float
    cf_std: float
    n_seed_sets: int


@dataclass(frozen=True)
class ContainmentReport:
    network: str
    details: tuple
    aggregates: tuple
    config: ExperimentConfig

    def out_of_range_rows(self, slack: float = 1e-9) -> tuple:
        """Monte Carlo cf values outside [0, 100]; reported raw, not clamped."""
        return tuple(r for r in self.details if r.cf < -slack or r.cf > 100.0 + slack)


def budget_to_edge_count(fraction: float, m: int) -> int:
    # tiny epsilon compensates binary rounding of fraction * m
    return max(0, int(math.floor(fraction * m + 1e-9)))


def _blocked_sets(g: Graph, cfg: ExperimentConfig) -> dict:
    """Blocked edge ids per (strategy, budget fraction), on the original graph."""
    out = {}
    for strat in cfg.strategies:
        if strat == "community":
            for frac in cfg.budget_fractions:
                k = budget_to_edge_count(frac, g.m)
                out[(strat, frac)] = strategies_mod.blocked_edges(
                    g, strat, k, cfg.master_seed, sweep=cfg.sweep)
        else:
            code = strategies_mod.strategy_code(strat)
            rng = rng_for(cfg.master_seed, strategies_mod.TAG_STRATEGY, code)
            scores = strategies_mod.score_edges(
                g, strat, rng=rng, damping=cfg.pagerank_damping)
            for frac in cfg.budget_fractions:
                k = budget_to_edge_count(frac, g.m)
                out[(strat, frac)] = strategies_mod.top_k_edges(scores, k)
    return out


def run_experiment(g: Graph, cfg: ExperimentConfig) -> ContainmentReport:
    """Full grid: draw seed sets, estimate baseline and post-blocking spread,
    emit per-cell detail rows and per-(strategy, budget) aggregates."""
    blocked = _blocked_sets(g, cfg)
    pruned = {key: remove_edges(g, ids) for key, ids in blocked.items()}

    seed_sets = [
        sample_seed_set(g, cfg.seed_fraction, rng_for(cfg.master_seed, TAG_SEED_SETS, i))
        for i in range(cfg.seed_set_reps)
    ]
    before_bits = [
        replicate_seed_bits(cfg.master_seed, TAG_CASCADE, i, count=cfg.cascade_reps)
        for i in range(cfg.seed_set_reps)
    ]
    phi_before = [
        estimate_spread(g, seed_sets[i], cfg.cascade_reps, cfg.master_seed,
                        seed_bits=before_bits[i])[0]
        for i in range(cfg.seed_set_reps)
    ]

    cells = []
    for si, strat in enumerate(cfg.strategies):
        for bi, frac in enumerate(cfg.budget_fractions):
            for i in range(cfg.seed_set_reps):
                cells.append((si, strat, bi, frac, i))

    def run_cell(cell):
        si, strat, bi, frac, i = cell
        gb = pruned[(strat, frac)]
        if cfg.common_random_numbers:
            bits = before_bits[i]
        else:
            bits = replicate_seed_bits(cfg.master_seed, TAG_CASCADE_INDEP, i, si, bi,
                                       count=cfg.cascade_reps)
        phi_after = estimate_spread(gb, seed_sets[i], cfg.cascade_reps,
                                    cfg.master_seed, seed_bits=bits)[0]
        return cell, phi_after

    workers = cfg.threads
    if workers == 0:
        import os
        workers = os.cpu_count() or 1
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(run_cell, cells))
    else:
        results = dict(map(run_cell, cells))

    details = []
    for cell in cells:
        si, strat, bi, frac, i = cell
        pb = phi_before[i]
        pa = results[cell]
        details.append(DetailRow(strat, frac, i, pb, pa, containment_factor(pb, pa)))

    report = ContainmentReport(
        network=cfg.network,
        details=tuple(details),
        aggregates=tuple(summarize_report(details)),
        config=cfg,
    )
    flagged = report.out_of_range_rows()
    if flagged:
        log.warning("%d containment factors fell outside [0, 100]", len(flagged))
    return report


def summarize_report(details) -> list:
    """Per-(strategy, budget) mean and sample std (n-1; zero for one row)."""
    if hasattr(details, "details"):
        details = details.details
    if not details:
        raise ValueError("report has no detail rows")
    groups: dict = {}
    for row in details:
        groups.setdefault((row.strategy, row.budget_fraction), []).append(row.cf)
    out = []
    for (strat, frac), values in groups.items():
        arr = np.asarray(values)
        std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
        out.append(AggregateRow(strat, frac, float(arr.mean()), std, int(arr.size)))
    return out


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

DETAIL_HEADER = "network,strategy,budget_pct,seed_set_id,phi_before,phi_after,cf"
AGGREGATE_HEADER = "network,strategy,budget_pct,cf_mean,cf_std,n_seed_sets"

_SVG_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _fmt_pct(fraction: float) -> str:
    return f"{fraction * 100.0:.10g}"


def export_csv(report: ContainmentReport, details_path, aggregates_path) -> None:
    """Two CSV files with fixed schemas; floats use exact shortest repr."""
    with open(details_path, "w", newline="") as fh:
        fh.write(DETAIL_HEADER + "\n")
        for r in report.details:
            fh.write(
                f"{report.network},{r.strategy},{_fmt_pct(r.budget_fraction)},"
                f"{r.seed_set_index},{float(r.phi_before)!r},{float(r.phi_after)!r},"
                f"{float(r.cf)!r}\n"
            )
    with open(aggregates_path, "w", newline="") as fh:
        fh.write(AGGREGATE_HEADER + "\n")
        for r in report.aggregates:
            fh.write(
                f"{report.network},{r.strategy},{_fmt_pct(r.budget_fraction)},"
                f"{float(r.cf_mean)!r},{float(r.cf_std)!r},{r.n_seed_sets}\n"
            )


def export_svg(report: ContainmentReport, path) -> None:
    """Mean containment factor vs budget percentage, one polyline per strategy."""
    width, height = 860, 520
    x0, y0, x1, y1 = 70.0, 30.0, 820.0, 470.0
    by_strategy: dict = {}
    for r in report.aggregates:
        by_strategy.setdefault(r.strategy, []).append((r.budget_fraction * 100.0, r.cf_mean))

    xs = [p for pts in by_strategy.values() for p, _ in pts]
    ys = [c for pts in by_strategy.values() for _, c in pts]
    xmin, xmax = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if xmax == xmin:
        xmax = xmin + 1.0
    ymin = min(0.0, min(ys)) if ys else 0.0
    ymax = max(ys) if ys else 1.0
    if ymax <= ymin:
        ymax = ymin + 1.0
    span_y = (ymax - ymin) * 1.05

    def sx(v):
        return x0 + (v - xmin) / (xmax - xmin) * (x1 - x0)

    def sy(v):
        return y1 - (v - ymin) / span_y * (y1 - y0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2:.1f}" y="{height - 8}" text-anchor="middle" '
        f'font-size="14">edges blocked (%)</text>',
        f'<text x="16" y="{(y0 + y1) / 2:.1f}" font-size="14" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2:.1f})" text-anchor="middle">'
        f'containment factor</text>',
        f'<text x="{(x0 + x1) / 2:.1f}" y="20" text-anchor="middle" font-size="15">'
        f'{report.network}</text>',
    ]
    for t in range(6):
        yv = ymin + span_y * t / 5.0
        parts.append(
            f'<line x1="{x0 - 4}" y1="{sy(yv):.2f}" x2="{x0}" y2="{sy(yv):.2f}" stroke="black"/>'
            f'<text x="{x0 - 8}" y="{sy(yv) + 4:.2f}" text-anchor="end" font-size="11">{yv:.1f}</text>'
        )
        xv = xmin + (xmax - xmin) * t / 5.0
        parts.append(
            f'<line x1="{sx(xv):.2f}" y1="{y1}" x2="{sx(xv):.2f}" y2="{y1 + 4}" stroke="black"/>'
            f'<text x="{sx(xv):.2f}" y="{y1 + 18}" text-anchor="middle" font-size="11">{xv:.1f}</text>'
        )
    for idx, (strat, pts) in enumerate(by_strategy.items()):
        color = _SVG_PALETTE[idx % len(_SVG_PALETTE)]
        pts = sorted(pts)
        coords = " ".join(f"{sx(px):.2f},{sy(py):.2f}" for px, py in pts)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'
        )
        ly = y0 + 18 * idx + 10
        parts.append(
            f'<line x1="{x1 - 130}" y1="{ly:.1f}" x2="{x1 - 105}" y2="{ly:.1f}" '
            f'stroke="{color}" stroke-width="2"/>'
            f'<text x="{x1 - 100}" y="{ly + 4:.1f}" font-size="12">{strat}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def export_report(report: ContainmentReport, fmt: str, sink) -> None:
    """Dispatch on format: 'csv' writes <sink>/<network>_{details,aggregates}.csv,
    'svg' writes <sink>/<network>_cf.svg (or to the exact path given a file)."""
    if fmt == "csv":
        base = Path(sink)
        if base.suffix:
            raise ValueError("csv export expects a directory sink")
        base.mkdir(parents=True, exist_ok=True)
        export_csv(report,
                   base / f"{report.network}_details.csv",
                   base / f"{report.network}_aggregates.csv")
    elif fmt == "svg-plot" or fmt == "svg":
        p = Path(sink)
        if not p.suffix:
            p.mkdir(parents=True, exist_ok=True)
            p = p / f"{report.network}_cf.svg"
        export_svg(report, p)
    else:
        raise ValueError(f"unknown export format {fmt!r}")


def load_aggregate_csv(path):
    """Parse an aggregates CSV back into AggregateRow tuples."""
    rows = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != AGGREGATE_HEADER:
            raise ValueError("unexpected aggregate CSV header")
        for line in fh:
            net, strat, pct, mean, std, nss = line.strip().split(",")
            rows.append((net, AggregateRow(strat, float(pct) / 100.0,
                                           float(mean), float(std), int(nss))))
    return rows
