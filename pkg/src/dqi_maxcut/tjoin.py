"""Minimum T-joins and the parity-vector decoder built on them.

A T-join is an edge subset whose odd-degree vertex set is exactly T.  The
minimum T-join is found by matching the T vertices pairwise along shortest
paths: breadth-first distances between all T pairs, an exact minimum-weight
perfect matching on that distance matrix, and a GF(2) union of the matched
paths (symmetric difference can only shrink the join, so minimality is
preserved for unit weights).

Decoding a parity vector alpha means finding the unique edge subset of
weight <= l with those degree parities; on graphs of girth >= 2l+1 the
minimum T-join for T = support(alpha) is that subset whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, InfeasibleError
from .graphs import Graph, components
from .parity import BitVector, parity_map

DEFAULT_T_BUDGET = 22


@dataclass(frozen=True)
class JoinResult:
    """Edge set whose odd-degree vertices are exactly the requested T."""

    edges: BitVector
    size: int


def min_weight_perfect_matching(dist, max_nodes: int = DEFAULT_T_BUDGET
                                ) -> list[tuple[int, int]]:
    """Exact minimum-weight perfect matching on a complete even-order graph.

    `dist` is a symmetric matrix (list of rows) of finite weights.  Bitmask
    dynamic programming over vertex subsets, O(t^2 2^t); ties break to the
    lexicographically smallest pairing.
    """
    t = len(dist)
    if t % 2:
        raise ValueError("perfect matching needs an even node count")
    if t == 0:
        return []
    if t > max_nodes:
        raise BudgetError("matching nodes", max_nodes, t)
    full = (1 << t) - 1
    inf = float("inf")
    dp = [inf] * (full + 1)
    dp[0] = 0.0
    for mask in range(1, full + 1):
        if mask.bit_count() % 2:
            continue
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        best = inf
        sub = rest
        while sub:
            j = (sub & -sub).bit_length() - 1
            cand = dp[rest ^ (1 << j)] + dist[i][j]
            if cand < best:
                best = cand
            sub &= sub - 1
        dp[mask] = best
    pairs = []
    mask = full
    while mask:
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        sub = rest
        while sub:
            j = (sub & -sub).bit_length() - 1
            if dp[rest ^ (1 << j)] + dist[i][j] == dp[mask]:
                pairs.append((i, j))
                mask = rest ^ (1 << j)
                break
            sub &= sub - 1
        else:
            raise AssertionError("matching reconstruction failed")
    return pairs


def _bfs_tree(graph: Graph, source: int):
    """Distances and discovery edges from source; neighbors scanned in
    sorted (vertex, edge) order for deterministic shortest paths."""
    dist = [-1] * graph.n
    parent_edge = [-1] * graph.n
    parent = [-1] * graph.n
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v, e in sorted(graph.adj[u]):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                parent_edge[v] = e
                queue.append(v)
    return dist, parent, parent_edge


def min_t_join(graph: Graph, t_set: BitVector,
               max_t: int = DEFAULT_T_BUDGET) -> JoinResult:
    """Minimum-cardinality subgraph whose odd-degree vertex set is exactly T.

    Infeasible when any connected component holds an odd number of T
    vertices; T sizes above the matching budget are an error, not a
    fallback, to keep the exactness guarantee.
    """
    if t_set.length != graph.n:
        raise ValueError(f"T vector length {t_set.length} != n = {graph.n}")
    terminals = t_set.indices()
    if not terminals:
        return JoinResult(BitVector.zero(graph.m), 0)
    for comp in components(graph):
        if sum(1 for v in comp if t_set.get(v)) % 2:
            raise InfeasibleError(
                f"component containing vertex {comp[0]} holds an odd number "
                "of T vertices"
            )
    if len(terminals) > max_t:
        raise BudgetError("t-join terminals", max_t, len(terminals))
    trees = {v: _bfs_tree(graph, v) for v in terminals}
    t = len(terminals)
    dist = [[0.0] * t for _ in range(t)]
    for i, u in enumerate(terminals):
        du = trees[u][0]
        for j, v in enumerate(terminals):
            if i < j:
                # Different components are unreachable; the evenness check
                # guarantees a finite within-component matching exists.
                d = du[v] if du[v] >= 0 else float("inf")
                dist[i][j] = dist[j][i] = d
    pairs = min_weight_perfect_matching(dist, max_nodes=max_t)
    bits = 0
    for i, j in pairs:
        # Walk v up the BFS tree of u; XOR keeps overlaps harmless.
        u, v = terminals[i], terminals[j]
        _, parent, parent_edge = trees[u]
        x = v
        while x != u:
            bits ^= 1 << parent_edge[x]
            x = parent[x]
    join = BitVector(bits, graph.m)
    odd = parity_map(graph, join)
    if odd.bits != t_set.bits:
        raise AssertionError("T-join postcondition violated")
    return JoinResult(join, join.weight())


def decode_parity(graph: Graph, l: int, alpha: BitVector,
                  max_t: int = DEFAULT_T_BUDGET) -> BitVector:
    """Recover the edge subset of weight <= l whose degree parities are alpha.

    Returns the minimum T-join for T = support(alpha); unique whenever the
    girth is at least 2l+1.  Raises InfeasibleError when the minimum join
    exceeds l or no join exists.
    """
    if alpha.length != graph.n:
        raise ValueError(f"alpha length {alpha.length} != n = {graph.n}")
    join = min_t_join(graph, alpha, max_t=max_t)
    if join.size > l:
        raise InfeasibleError(
            f"minimum join has {join.size} edges, above the weight bound {l}"
        )
    return join.edges
