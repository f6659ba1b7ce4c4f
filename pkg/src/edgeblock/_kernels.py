"""Hot numeric kernels over CSR graph arrays.

Every function here is nopython-compatible and decorated with ``maybe_jit``;
with ``EDGEBLOCK_NO_NUMBA=1`` the same code runs as plain Python.  Kernels
take flat arrays only (CSR adjacency: ``indptr``, ``nbrs``, plus per-slot
weight/edge-id arrays) and allocate their own scratch space, so a shared
read-only graph can be used from many threads (kernels are compiled nogil).

Conventions: node states are 0=white, 1=red, 2=orange; ``-1``/``np.inf``
mark unreached nodes; per-replicate RNG streams are splitmix64 states
derived outside and passed in as int64 bit patterns.
"""

import numpy as np

from ._accel import maybe_jit, rng_u01, seed_to_state

WHITE = 0
RED = 1
ORANGE = 2


# ---------------------------------------------------------------------------
# independent cascade
# ---------------------------------------------------------------------------

@maybe_jit
def cascade_run(indptr, nbrs, adj_w, seeds, seed_bits):
    """One full cascade to quiescence; returns (state array, rounds).

    Synchronous rounds: every red node attempts each currently-white
    neighbor once (one uniform draw per attempt, in node/adjacency order),
    then all reds turn orange and the newly hit nodes turn red.
    """
    n = indptr.shape[0] - 1
    state = np.zeros(n, np.uint8)
    newly = np.zeros(n, np.uint8)
    frontier = np.empty(n, np.int64)
    nxt = np.empty(n, np.int64)

    fcount = 0
    for i in range(seeds.shape[0]):
        s = seeds[i]
        if state[s] == WHITE:
            state[s] = RED
            frontier[fcount] = s
            fcount += 1

    rng = seed_to_state(seed_bits)
    rounds = 0
    while fcount > 0:
        rounds += 1
        ncount = 0
        for i in range(fcount):
            u = frontier[i]
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if state[v] == WHITE:
                    rng, draw = rng_u01(rng)
                    if draw < adj_w[j] and newly[v] == 0:
                        newly[v] = 1
                        nxt[ncount] = v
                        ncount += 1
        for i in range(fcount):
            state[frontier[i]] = ORANGE
        for i in range(ncount):
            v = nxt[i]
            newly[v] = 0
            state[v] = RED
            frontier[i] = v
        fcount = ncount
    return state, rounds


@maybe_jit
def cascade_batch(indptr, nbrs, adj_w, seeds, seed_bits_arr):
    """Orange-count sum and sum of squares over independent replicates.

    Integer accumulators keep the aggregation exact, hence independent of
    summation order.
    """
    total = 0
    total_sq = 0
    for r in range(seed_bits_arr.shape[0]):
        state, _ = cascade_run(indptr, nbrs, adj_w, seeds, seed_bits_arr[r])
        count = 0
        for i in range(state.shape[0]):
            if state[i] == ORANGE:
                count += 1
        total += count
        total_sq += count * count
    return total, total_sq


@maybe_jit
def reach_count(indptr, nbrs, seeds):
    """Number of nodes reachable from the seed set (seeds included)."""
    n = indptr.shape[0] - 1
    visited = np.zeros(n, np.uint8)
    queue = np.empty(n, np.int64)
    head = 0
    tail = 0
    for i in range(seeds.shape[0]):
        s = seeds[i]
        if visited[s] == 0:
            visited[s] = 1
            queue[tail] = s
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for j in range(indptr[u], indptr[u + 1]):
            v = nbrs[j]
            if visited[v] == 0:
                visited[v] = 1
                queue[tail] = v
                tail += 1
    return tail


@maybe_jit
def expected_reach_live_edges(eu, ev, w, n, seeds):
    """Exact expected reach under independent edge liveness.

    Enumerates all 2^m live-edge subsets; each edge is live with its own
    probability.  Exponential: callers must guard m.
    """
    m = eu.shape[0]
    parent = np.empty(n, np.int64)
    marked = np.zeros(n, np.uint8)
    roots = np.empty(seeds.shape[0], np.int64)
    total = 0.0
    for mask in range(1 << m):
        prob = 1.0
        for e in range(m):
            if (mask >> e) & 1:
                prob *= w[e]
            else:
                prob *= 1.0 - w[e]
        if prob == 0.0:
            continue
        for i in range(n):
            parent[i] = i
        for e in range(m):
            if (mask >> e) & 1:
                # union by path-halving find
                a = eu[e]
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                b = ev[e]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[b] = a
        nmark = 0
        for i in range(seeds.shape[0]):
            a = seeds[i]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            if marked[a] == 0:
                marked[a] = 1
                roots[nmark] = a
                nmark += 1
        reach = 0
        for v in range(n):
            a = v
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            if marked[a] == 1:
                reach += 1
        for i in range(nmark):
            marked[roots[i]] = 0
        total += prob * reach
    return total


# ---------------------------------------------------------------------------
# BFS sweeps: distances, eccentricity, girth
# ---------------------------------------------------------------------------

@maybe_jit
def all_sources_bfs_stats(indptr, nbrs):
    """Per-source (reachable count, distance sum, eccentricity) by hop BFS."""
    n = indptr.shape[0] - 1
    reach = np.zeros(n, np.int64)
    sumd = np.zeros(n, np.int64)
    ecc = np.zeros(n, np.int64)
    dist = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        total = 0
        far = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            total += du
            if du > far:
                far = du
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
        reach[s] = tail
        sumd[s] = total
        ecc[s] = far
    return reach, sumd, ecc


@maybe_jit
def girth_bfs(indptr, nbrs):
    """Length of the shortest cycle; 0 when the graph is acyclic.

    BFS from every node; any scanned non-tree edge (x, y) closes a walk of
    length dist[x]+dist[y]+1 through the root, which never undershoots the
    girth, and roots on a shortest cycle realize it exactly.
    """
    n = indptr.shape[0] - 1
    dist = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    best = 0
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            parent[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
                elif v != parent[u]:
                    cand = dist[u] + dist[v] + 1
                    if best == 0 or cand < best:
                        best = cand
        if best == 3:
            break
    return best


# ---------------------------------------------------------------------------
# triangles / common neighbors
# ---------------------------------------------------------------------------

@maybe_jit
def edge_common_neighbors(indptr, nbrs, eu, ev):
    """Per-edge count of common neighbors (adjacency rows must be sorted)."""
    m = eu.shape[0]
    out = np.zeros(m, np.int64)
    for e in range(m):
        i = indptr[eu[e]]
        iend = indptr[eu[e] + 1]
        j = indptr[ev[e]]
        jend = indptr[ev[e] + 1]
        c = 0
        while i < iend and j < jend:
            a = nbrs[i]
            b = nbrs[j]
            if a == b:
                c += 1
                i += 1
                j += 1
            elif a < b:
                i += 1
            else:
                j += 1
        out[e] = c
    return out


# ---------------------------------------------------------------------------
# shortest-path centrality
# ---------------------------------------------------------------------------

@maybe_jit
def _heap_push(hdist, hnode, size, d, v):
    i = size
    hdist[i] = d
    hnode[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if hdist[p] > hdist[i] or (hdist[p] == hdist[i] and hnode[p] > hnode[i]):
            hdist[p], hdist[i] = hdist[i], hdist[p]
            hnode[p], hnode[i] = hnode[i], hnode[p]
            i = p
        else:
            break
    return size + 1


@maybe_jit
def _heap_pop(hdist, hnode, size):
    d = hdist[0]
    v = hnode[0]
    size -= 1
    hdist[0] = hdist[size]
    hnode[0] = hnode[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        small = left
        right = left + 1
        if right < size and (
            hdist[right] < hdist[left]
            or (hdist[right] == hdist[left] and hnode[right] < hnode[left])
        ):
            small = right
        if hdist[small] < hdist[i] or (hdist[small] == hdist[i] and hnode[small] < hnode[i]):
            hdist[i], hdist[small] = hdist[small], hdist[i]
            hnode[i], hnode[small] = hnode[small], hnode[i]
            i = small
        else:
            break
    return d, v, size


@maybe_jit
def _dijkstra_paths(indptr, nbrs, dlen, src, dist, done, sigma, ordseq, ordpos, hdist, hnode):
    """Dijkstra with path counting.  Heap keys are (distance, node id), so
    the finalization order is deterministic even with zero-length edges.
    Returns the number of reached nodes; fills dist/sigma/ordseq/ordpos.
    """
    n = dist.shape[0]
    for i in range(n):
        dist[i] = np.inf
        done[i] = 0
        sigma[i] = 0.0
        ordpos[i] = -1
    dist[src] = 0.0
    sigma[src] = 1.0
    size = _heap_push(hdist, hnode, 0, 0.0, src)
    cnt = 0
    while size > 0:
        d, v, size = _heap_pop(hdist, hnode, size)
        if done[v] == 1:
            continue
        done[v] = 1
        ordseq[cnt] = v
        ordpos[v] = cnt
        cnt += 1
        for j in range(indptr[v], indptr[v + 1]):
            w = nbrs[j]
            if done[w] == 1:
                continue
            nd = d + dlen[j]
            if nd < dist[w]:
                dist[w] = nd
                sigma[w] = sigma[v]
                size = _heap_push(hdist, hnode, size, nd, w)
            elif nd == dist[w]:
                sigma[w] += sigma[v]
    return cnt


@maybe_jit
def all_sources_dijkstra_stats(indptr, nbrs, dlen):
    """Per-source (reachable count, distance sum) with edge lengths dlen."""
    n = indptr.shape[0] - 1
    m2 = nbrs.shape[0]
    reach = np.zeros(n, np.int64)
    sumd = np.zeros(n, np.float64)
    dist = np.empty(n, np.float64)
    done = np.empty(n, np.uint8)
    sigma = np.empty(n, np.float64)
    ordseq = np.empty(n, np.int64)
    ordpos = np.empty(n, np.int64)
    cap = n + m2 + 1
    hdist = np.empty(cap, np.float64)
    hnode = np.empty(cap, np.int64)
    for s in range(n):
        cnt = _dijkstra_paths(indptr, nbrs, dlen, s, dist, done, sigma, ordseq, ordpos, hdist, hnode)
        total = 0.0
        for i in range(cnt):
            total += dist[ordseq[i]]
        reach[s] = cnt
        sumd[s] = total
    return reach, sumd


@maybe_jit
def edge_betweenness_unweighted(indptr, nbrs, adj_eid, m):
    """Brandes edge betweenness with hop distances, over unordered pairs."""
    n = indptr.shape[0] - 1
    bc = np.zeros(m, np.float64)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    order = np.empty(n, np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = order[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    order[tail] = v
                    tail += 1
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
        for idx in range(tail - 1, -1, -1):
            w = order[idx]
            coef = (1.0 + delta[w]) / sigma[w]
            for j in range(indptr[w], indptr[w + 1]):
                v = nbrs[j]
                if dist[v] >= 0 and dist[v] == dist[w] - 1:
                    c = sigma[v] * coef
                    bc[adj_eid[j]] += c
                    delta[v] += c
    for e in range(m):
        bc[e] *= 0.5
    return bc


@maybe_jit
def edge_betweenness_weighted(indptr, nbrs, dlen, adj_eid, m):
    """Brandes edge betweenness with nonnegative edge lengths.

    Predecessor test combines exact distance equality with finalization
    order, which keeps the shortest-path DAG acyclic when zero-length
    edges are present.
    """
    n = indptr.shape[0] - 1
    m2 = nbrs.shape[0]
    bc = np.zeros(m, np.float64)
    dist = np.empty(n, np.float64)
    done = np.empty(n, np.uint8)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    ordseq = np.empty(n, np.int64)
    ordpos = np.empty(n, np.int64)
    cap = n + m2 + 1
    hdist = np.empty(cap, np.float64)
    hnode = np.empty(cap, np.int64)
    for s in range(n):
        cnt = _dijkstra_paths(indptr, nbrs, dlen, s, dist, done, sigma, ordseq, ordpos, hdist, hnode)
        for i in range(n):
            delta[i] = 0.0
        for idx in range(cnt - 1, -1, -1):
            w = ordseq[idx]
            coef = (1.0 + delta[w]) / sigma[w]
            pw = ordpos[w]
            for j in range(indptr[w], indptr[w + 1]):
                v = nbrs[j]
                if ordpos[v] >= 0 and ordpos[v] < pw and dist[v] + dlen[j] == dist[w]:
                    c = sigma[v] * coef
                    bc[adj_eid[j]] += c
                    delta[v] += c
    for e in range(m):
        bc[e] *= 0.5
    return bc


# ---------------------------------------------------------------------------
# Louvain local moving
# ---------------------------------------------------------------------------

@maybe_jit
def louvain_local_pass(indptr, nbrs, w, node_k, comm, comm_tot, order, gamma, two_m):
    """One pass of greedy community moves in the given node order.

    Gains are compared as  w(v, c) - gamma * tot_c * k_v / two_m  (shared
    terms dropped); a move needs a strictly positive improvement.  Returns
    the number of moves.
    """
    n = order.shape[0]
    wtc = np.zeros(n, np.float64)
    touched = np.zeros(n, np.uint8)
    tlist = np.empty(n, np.int64)
    moves = 0
    for oi in range(n):
        v = order[oi]
        cv = comm[v]
        kv = node_k[v]
        ncnt = 0
        for j in range(indptr[v], indptr[v + 1]):
            c = comm[nbrs[j]]
            if touched[c] == 0:
                touched[c] = 1
                tlist[ncnt] = c
                ncnt += 1
            wtc[c] += w[j]
        comm_tot[cv] -= kv
        best = wtc[cv] - gamma * comm_tot[cv] * kv / two_m
        bc = cv
        for t in range(ncnt):
            c = tlist[t]
            if c == cv:
                continue
            gain = wtc[c] - gamma * comm_tot[c] * kv / two_m
            if gain > best + 1e-12:
                best = gain
                bc = c
        comm_tot[bc] += kv
        if bc != cv:
            comm[v] = bc
            moves += 1
        for t in range(ncnt):
            c = tlist[t]
            wtc[c] = 0.0
            touched[c] = 0
    return moves


# ---------------------------------------------------------------------------
# exhaustive optimization (small instances)
# ---------------------------------------------------------------------------

@maybe_jit
def best_k_subgraph(adj_bits, n, k):
    """Max induced edge count over k-node subsets, with the first
    lexicographic maximizer.  adj_bits[v] holds v's neighborhood bitmask."""
    comb = np.empty(k, np.int64)
    for i in range(k):
        comb[i] = i
    best = -1
    best_comb = np.empty(k, np.int64)
    while True:
        count = 0
        for a in range(k):
            va = comb[a]
            bits = adj_bits[va]
            for b in range(a + 1, k):
                count += (bits >> comb[b]) & 1
        if count > best:
            best = count
            for i in range(k):
                best_comb[i] = comb[i]
        i = k - 1
        while i >= 0 and comb[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        comb[i] += 1
        for j in range(i + 1, k):
            comb[j] = comb[j - 1] + 1
    return best, best_comb


@maybe_jit
def best_edge_blocking(indptr, nbrs, adj_eid, m, k, seeds):
    """Max count of nodes unreachable from the seeds over all k-edge
    removals (unit weights: spread is plain reachability).  Returns the
    optimum and the first lexicographic witness subset of edge ids."""
    n = indptr.shape[0] - 1
    comb = np.empty(k, np.int64)
    for i in range(k):
        comb[i] = i
    blocked = np.zeros(m, np.uint8)
    visited = np.zeros(n, np.uint8)
    queue = np.empty(n, np.int64)
    best = -1
    best_comb = np.empty(k, np.int64)
    while True:
        for i in range(k):
            blocked[comb[i]] = 1
        head = 0
        tail = 0
        for i in range(seeds.shape[0]):
            s = seeds[i]
            if visited[s] == 0:
                visited[s] = 1
                queue[tail] = s
                tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                if blocked[adj_eid[j]] == 1:
                    continue
                v = nbrs[j]
                if visited[v] == 0:
                    visited[v] = 1
                    queue[tail] = v
                    tail += 1
        white = n - tail
        if white > best:
            best = white
            for i in range(k):
                best_comb[i] = comb[i]
        for i in range(tail):
            visited[queue[i]] = 0
        for i in range(k):
            blocked[comb[i]] = 0
        i = k - 1
        while i >= 0 and comb[i] == m - k + i:
            i -= 1
        if i < 0:
            break
        comb[i] += 1
        for j in range(i + 1, k):
            comb[j] = comb[j - 1] + 1
    return best, best_comb
