"""Immutable undirected weighted graph: construction, ingestion, statistics.

Nodes are dense integers ``0..n-1`` (original file ids are kept in a side
label map).  Edges are stored once with ``u < v`` in lexicographic order;
the position in that order is the canonical edge id used everywhere.  A CSR
adjacency index (sorted neighbor rows, per-slot weight and edge id) backs
the kernels.  Instances are frozen and their arrays are marked read-only,
so they are safe to share across threads.
"""

from __future__ import annotations

import gzip
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels

log = logging.getLogger(__name__)


class ParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


def _freeze(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Graph:
    n: int
    eu: np.ndarray          # int64[m], u endpoint, u < v
    ev: np.ndarray          # int64[m]
    w: np.ndarray           # float64[m], weights in (0, 1]
    indptr: np.ndarray      # int64[n+1] CSR row pointers
    nbrs: np.ndarray        # int64[2m] neighbor ids, sorted within each row
    adj_w: np.ndarray       # float64[2m] weight per adjacency slot
    adj_eid: np.ndarray     # int64[2m] edge id per adjacency slot
    labels: tuple | None = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return int(self.eu.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def weighted_degrees(self) -> np.ndarray:
        out = np.zeros(self.n)
        np.add.at(out, self.eu, self.w)
        np.add.at(out, self.ev, self.w)
        return out

    def edge_tuple(self, e: int) -> tuple[int, int, float]:
        if not 0 <= e < self.m:
            raise ValueError(f"edge id {e} out of range [0, {self.m})")
        return int(self.eu[e]), int(self.ev[e]), float(self.w[e])

    def neighbors(self, v: int) -> np.ndarray:
        return self.nbrs[self.indptr[v]:self.indptr[v + 1]]

    def edge_id(self, u: int, v: int) -> int:
        """Canonical id of edge (u, v); raises if absent."""
        if u > v:
            u, v = v, u
        lo = int(np.searchsorted(self.eu, u, side="left"))
        hi = int(np.searchsorted(self.eu, u, side="right"))
        j = lo + int(np.searchsorted(self.ev[lo:hi], v, side="left"))
        if j < hi and self.ev[j] == v:
            return j
        raise ValueError(f"no edge ({u}, {v})")

    def with_weights(self, w: np.ndarray) -> "Graph":
        """Same structure, new per-edge weights."""
        w = np.asarray(w, dtype=np.float64)
        if w.shape != (self.m,):
            raise ValueError("weight array must have one entry per edge")
        return from_edge_arrays(self.n, self.eu.copy(), self.ev.copy(), w, labels=self.labels)

    def same_structure(self, other: "Graph") -> bool:
        """Structural equality: node count, edge pairs and exact weights."""
        return (
            self.n == other.n
            and self.m == other.m
            and bool(np.array_equal(self.eu, other.eu))
            and bool(np.array_equal(self.ev, other.ev))
            and bool(np.array_equal(self.w, other.w))
        )

    def label_of(self, v: int):
        return self.labels[v] if self.labels is not None else v


def from_edge_arrays(n, eu, ev, w=None, labels=None) -> Graph:
    """Build a Graph from endpoint arrays.

    Validates simplicity (no self-loops, no duplicates) and weight range,
    canonicalizes to u < v with lexicographic edge order, and builds the
    CSR index.
    """
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    m = eu.shape[0]
    if ev.shape[0] != m:
        raise ValueError("endpoint arrays differ in length")
    if w is None:
        w = np.ones(m)
    else:
        w = np.asarray(w, dtype=np.float64)
        if w.shape[0] != m:
            raise ValueError("weight array length mismatch")
    if m > 0:
        if eu.min() < 0 or max(eu.max(), ev.max()) >= n:
            raise ValueError("endpoint out of range")
        if np.any(eu == ev):
            raise ValueError("self-loops are not allowed")
        if np.any(w <= 0.0) or np.any(w > 1.0):
            raise ValueError("edge weights must lie in (0, 1]")
    lo = np.minimum(eu, ev)
    hi = np.maximum(eu, ev)
    order = np.lexsort((hi, lo))
    lo, hi, w = lo[order], hi[order], w[order]
    if m > 1:
        dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
        if np.any(dup):
            raise ValueError("duplicate edges are not allowed")

    half = np.concatenate([lo, hi])
    other = np.concatenate([hi, lo])
    eids = np.concatenate([np.arange(m), np.arange(m)])
    ws = np.concatenate([w, w])
    aorder = np.lexsort((other, half))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, half + 1, 1)
    np.cumsum(indptr, out=indptr)

    return Graph(
        n=int(n),
        eu=_freeze(lo),
        ev=_freeze(hi),
        w=_freeze(w),
        indptr=_freeze(indptr),
        nbrs=_freeze(other[aorder]),
        adj_w=_freeze(ws[aorder]),
        adj_eid=_freeze(eids[aorder]),
        labels=tuple(labels) if labels is not None else None,
    )


# ---------------------------------------------------------------------------
# ingestion / serialization
# ---------------------------------------------------------------------------

@dataclass
class LoadReport:
    duplicate_edges: int = 0
    self_loops: int = 0
    comment_lines: int = 0


def _open_text(source):
    if isinstance(source, (str, Path)):
        p = Path(source)
        if p.suffix == ".gz":
            return gzip.open(p, "rt")
        return open(p, "r")
    if isinstance(source, bytes):
        return io.StringIO(source.decode())
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode()
        return io.StringIO(data)
    raise TypeError(f"unsupported edge-list source: {type(source)!r}")


def parse_edge_list(source, return_report=False):
    """Parse a whitespace-separated edge list into a Graph.

    Lines starting with '#' or '%' are comments.  Each data line holds two
    node tokens and optionally a weight in (0, 1]; without a weight column
    all weights are 1.  Duplicate (including reversed) edges and self-loops
    are dropped and counted.  Node ids may be arbitrary integers or strings;
    dense internal ids follow first appearance and original ids are kept as
    labels.
    """
    report = LoadReport()
    node_index: dict[str, int] = {}
    tokens_in_order: list[str] = []
    seen_pairs: set[tuple[int, int]] = set()
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    any_weight = False

    with _open_text(source) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line[0] in "#%":
                report.comment_lines += 1
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 2 or 3 fields, got {len(parts)}", lineno)
            ua, va = parts[0], parts[1]
            weight = 1.0
            if len(parts) == 3:
                try:
                    weight = float(parts[2])
                except ValueError:
                    raise ParseError(f"bad weight {parts[2]!r}", lineno) from None
                if not 0.0 < weight <= 1.0:
                    raise ParseError(f"weight {weight} outside (0, 1]", lineno)
                any_weight = True
            for tok in (ua, va):
                if tok not in node_index:
                    node_index[tok] = len(tokens_in_order)
                    tokens_in_order.append(tok)
            iu, iv = node_index[ua], node_index[va]
            if iu == iv:
                report.self_loops += 1
                continue
            key = (iu, iv) if iu < iv else (iv, iu)
            if key in seen_pairs:
                report.duplicate_edges += 1
                continue
            seen_pairs.add(key)
            us.append(iu)
            vs.append(iv)
            ws.append(weight)

    if not tokens_in_order:
        raise ParseError("empty edge list")
    if report.self_loops or report.duplicate_edges:
        log.info(
            "dropped %d self-loop(s) and %d duplicate edge(s)",
            report.self_loops, report.duplicate_edges,
        )

    labels: tuple = tuple(
        int(t) if t.lstrip("-").isdigit() else t for t in tokens_in_order
    )
    g = from_edge_arrays(
        len(tokens_in_order),
        np.array(us, dtype=np.int64),
        np.array(vs, dtype=np.int64),
        np.array(ws) if any_weight else None,
        labels=labels,
    )
    return (g, report) if return_report else g


def _format_weight(w: float) -> str:
    # shortest exact decimal, padded to at least 9 significant digits
    lead = 0 if w >= 1.0 else -int(math.floor(math.log10(w))) - 1
    return np.format_float_positional(w, unique=True, min_digits=9 + lead)


def write_edge_list(g: Graph, sink) -> None:
    """Write 'u v weight' lines in canonical edge order.

    Weights are exact decimals (at least 9 significant digits), so a parse
    round-trip reproduces them bit for bit.
    """
    own = isinstance(sink, (str, Path))
    fh = open(sink, "w") if own else sink
    try:
        fh.write(f"# nodes {g.n} edges {g.m}\n")
        for e in range(g.m):
            lu = g.label_of(int(g.eu[e]))
            lv = g.label_of(int(g.ev[e]))
            fh.write(f"{lu} {lv} {_format_weight(float(g.w[e]))}\n")
    finally:
        if own:
            fh.close()


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------

def assign_jaccard_weights(g: Graph) -> Graph:
    """Reweight every edge (u, v) by |N̂(u) ∩ N̂(v)| / |N(u) ∪ N(v)|.

    The closed-neighborhood numerator always contains both endpoints, so
    weights land in (0, 1]; weight 1 means the closed neighborhoods agree.
    """
    if g.m == 0:
        raise ValueError("graph has no edges to weight")
    common = _kernels.edge_common_neighbors(g.indptr, g.nbrs, g.eu, g.ev)
    deg = g.degrees
    numer = common + 2
    denom = deg[g.eu] + deg[g.ev] - common
    return g.with_weights(numer / denom)


def edge_distance(g: Graph, e: int) -> float:
    """Distance form of an edge weight: 1 - weight, in [0, 1)."""
    if not 0 <= e < g.m:
        raise ValueError(f"edge id {e} out of range [0, {g.m})")
    return float(1.0 - g.w[e])


def edge_distances(g: Graph) -> np.ndarray:
    return 1.0 - g.w


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    d_avg: float
    d_max: int
    diameter: int            # of the largest component when disconnected
    connected: bool
    k_avg: float             # average local clustering, degree<2 counts as 0
    triangles: int


def graph_stats(g: Graph) -> GraphStats:
    """Structural summary; diameter comes from all-sources BFS."""
    n, m = g.n, g.m
    deg = g.degrees
    d_max = int(deg.max()) if n else 0
    d_avg = 2.0 * m / n if n else 0.0

    if n:
        reach, _, ecc = _kernels.all_sources_bfs_stats(g.indptr, g.nbrs)
        largest = int(reach.max())
        connected = largest == n
        diameter = int(ecc[reach == largest].max())
    else:
        connected, diameter = True, 0

    triangles = 0
    k_avg = 0.0
    if m:
        common = _kernels.edge_common_neighbors(g.indptr, g.nbrs, g.eu, g.ev)
        triangles = int(common.sum()) // 3
        tri2 = np.zeros(n, dtype=np.int64)   # 2x triangles through each node
        np.add.at(tri2, g.eu, common)
        np.add.at(tri2, g.ev, common)
        mask = deg >= 2
        local = np.zeros(n)
        local[mask] = tri2[mask] / (deg[mask] * (deg[mask] - 1.0))
        k_avg = float(local.sum() / n)

    return GraphStats(
        n=n, m=m, d_avg=d_avg, d_max=d_max, diameter=diameter,
        connected=connected, k_avg=k_avg, triangles=triangles,
    )


def girth(g: Graph):
    """Length of the shortest cycle, math.inf for acyclic graphs."""
    if g.m == 0:
        return math.inf
    best = _kernels.girth_bfs(g.indptr, g.nbrs)
    return math.inf if best == 0 else int(best)


def connected_component_sizes(g: Graph) -> np.ndarray:
    """Sizes of connected components, descending."""
    sizes = []
    visited = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        if visited[v]:
            continue
        comp = _component_of(g, v)
        visited[comp] = True
        sizes.append(len(comp))
    return np.array(sorted(sizes, reverse=True), dtype=np.int64)


def _component_of(g: Graph, src: int) -> np.ndarray:
    seen = np.zeros(g.n, dtype=bool)
    seen[src] = True
    stack = [src]
    out = [src]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
                out.append(int(v))
    return np.array(out, dtype=np.int64)


def remove_edges(g: Graph, edge_ids) -> Graph:
    """New Graph without the given canonical edge ids; nodes unchanged."""
    ids = np.asarray(sorted(set(int(e) for e in edge_ids)), dtype=np.int64)
    if ids.size and (ids[0] < 0 or ids[-1] >= g.m):
        bad = ids[0] if ids[0] < 0 else ids[-1]
        raise ValueError(f"edge id {bad} out of range [0, {g.m})")
    keep = np.ones(g.m, dtype=bool)
    keep[ids] = False
    return from_edge_arrays(g.n, g.eu[keep], g.ev[keep], g.w[keep], labels=g.labels)


def edge_ids_for_pairs(g: Graph, pairs) -> np.ndarray:
    """Canonical edge ids for (u, v) pairs (order-insensitive)."""
    return np.array([g.edge_id(u, v) for u, v in pairs], dtype=np.int64)
