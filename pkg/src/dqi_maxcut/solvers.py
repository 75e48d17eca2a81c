"""Exact MaxCut solvers and the high-girth structure results.

Three solvers, strongest guarantees at desk scale:

* brute force over 2^(n-1) assignments (the oracle for everything else);
* a fixed-parameter exact solver whose exponential cost is confined to the
  cyclomatic number mu = m - n + #components: enumerate sides for the
  endpoints of non-tree edges, then a bottom-up tree dynamic program over
  the spanning forest with those vertices clamped;
* the spanning-tree 2-coloring, which cuts every tree edge and therefore
  at least m - mu edges.

Also the peeling construction that partitions a high-girth graph into a
bounded number of vertex-disjoint trees with at most one edge between any
two parts, and the mu certificate used in family sweeps.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetError
from .graphs import Girth, Graph, SpanningForest, components, cut_value, cyclomatic, girth, spanning_forest
from .simulate import DEFAULT_ASSIGNMENT_BUDGET, _CHUNK, CutAssignment

DEFAULT_FPT_EXPONENT = 30  # require 2 * mu <= this


@dataclass(frozen=True)
class MaxCutResult:
    value: float
    assignment: CutAssignment
    method: str
    elapsed: float

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "value": self.value,
            "assignment": self.assignment.bitstring(),
            "method": self.method,
        }
        if include_timing:
            out["elapsed_s"] = self.elapsed
        return out


@dataclass(frozen=True)
class TreePartition:
    """Vertex-disjoint trees covering V with <= 1 edge between any two parts."""

    parts: tuple[tuple[int, ...], ...]
    part_edges: tuple[tuple[int, ...], ...]
    d: Optional[int]
    cross_edges: int
    degenerate: bool

    @property
    def t(self) -> int:
        return len(self.parts)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "cross_edges": self.cross_edges,
            "degenerate": self.degenerate,
            "parts": [list(p) for p in self.parts],
            "part_edges": [list(e) for e in self.part_edges],
        }


@dataclass(frozen=True)
class MuCertificate:
    mu: int
    per_component: tuple[int, ...]
    girth: Girth
    non_tree_edges: int
    bound_check: bool

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "per_component": list(self.per_component),
            "girth": int(self.girth.value) if self.girth.finite else "inf",
            "non_tree_edges": self.non_tree_edges,
            "bound_check": self.bound_check,
        }


def _finish(graph: Graph, value, bits: int, method: str, t0: float) -> MaxCutResult:
    if graph.weights is None:
        value = int(value)
    else:
        value = float(value)
    assignment = CutAssignment(bits, graph.n, value)
    return MaxCutResult(value, assignment, method, time.perf_counter() - t0)


def brute_force_maxcut(graph: Graph,
                       max_assignments: int = DEFAULT_ASSIGNMENT_BUDGET
                       ) -> MaxCutResult:
    """Exact optimum by enumerating all assignments with vertex 0 pinned.

    Deterministic tie-break: the smallest assignment integer attaining the
    optimum (bit v = side of vertex v).
    """
    t0 = time.perf_counter()
    states = 1 << max(graph.n - 1, 0)
    if states > max_assignments:
        raise BudgetError("assignments", max_assignments, states)
    weighted = graph.weights is not None
    best_val = -1.0
    best_bits = 0
    for lo in range(0, states, _CHUNK):
        hi = min(lo + _CHUNK, states)
        x = np.arange(lo, hi, dtype=np.uint64)
        acc = np.zeros(hi - lo, dtype=np.float64 if weighted else np.int32)
        for e, (u, v) in enumerate(graph.edges):
            if u == 0:
                bit = (x >> np.uint64(v - 1)) & np.uint64(1)
            else:
                bit = ((x >> np.uint64(u - 1)) ^ (x >> np.uint64(v - 1))) & np.uint64(1)
            if weighted:
                acc += bit.astype(np.float64) * graph.weights[e]
            else:
                acc += bit.astype(np.int32)
        idx = int(np.argmax(acc))          # first occurrence = smallest bits
        if acc[idx] > best_val:
            best_val = float(acc[idx])
            best_bits = (lo + idx) << 1    # vertex 0 occupies bit 0
    return _finish(graph, best_val, best_bits, "brute", t0)


def _component_slices(forest: SpanningForest):
    """Per-component contiguous slices of the BFS visit order."""
    bounds = []
    root_set = set(forest.roots)
    for i, v in enumerate(forest.order):
        if v in root_set:
            bounds.append(i)
    bounds.append(len(forest.order))
    return [forest.order[a:b] for a, b in zip(bounds, bounds[1:])]


def fpt_maxcut(graph: Graph,
               max_exponent: int = DEFAULT_FPT_EXPONENT) -> MaxCutResult:
    """Exact optimum with the exponential cost confined to mu.

    For each component: clamp the endpoints of its non-tree edges to each
    side pattern (one endpoint fixed to break the global flip symmetry) and
    run a bottom-up dynamic program over the spanning tree maximizing the
    cut weight of tree edges; non-tree edges contribute a constant per
    pattern.  Supports edge weights.
    """
    t0 = time.perf_counter()
    mu = cyclomatic(graph)
    if 2 * mu > max_exponent:
        raise BudgetError("fpt exponent (2*mu)", max_exponent, 2 * mu)
    forest = spanning_forest(graph)
    children: list[list[int]] = [[] for _ in range(graph.n)]
    for v, p in enumerate(forest.parent):
        if p >= 0:
            children[p].append(v)
    comp_of = [0] * graph.n
    slices = _component_slices(forest)
    for ci, vs in enumerate(slices):
        for v in vs:
            comp_of[v] = ci
    nontree_by_comp: list[list[int]] = [[] for _ in slices]
    for e in forest.non_tree_edges:
        nontree_by_comp[comp_of[graph.edges[e][0]]].append(e)

    neg = float("-inf")
    total = 0.0
    bits = 0
    for ci, order in enumerate(slices):
        anchors = sorted({v for e in nontree_by_comp[ci] for v in graph.edges[e]})
        free = anchors[1:]  # first anchor pinned to side 0 (flip symmetry)
        best_val = neg
        best_assign = None
        for pattern in range(1 << len(free)):
            side = {}
            if anchors:
                side[anchors[0]] = 0
            for i, v in enumerate(free):
                side[v] = (pattern >> i) & 1
            base = 0.0
            for e in nontree_by_comp[ci]:
                u, v = graph.edges[e]
                if side[u] != side[v]:
                    base += graph.weight(e)
            dp = {v: [0.0, 0.0] for v in order}
            for v in order:
                if v in side:
                    dp[v][1 - side[v]] = neg
            for v in reversed(order):
                p = forest.parent[v]
                if p < 0:
                    continue
                w = graph.weight(forest.parent_edge[v])
                d0, d1 = dp[v]
                dp[p][0] += max(d0, d1 + w)
                dp[p][1] += max(d1, d0 + w)
            root = order[0]
            r0, r1 = dp[root]
            val = base + max(r0, r1)
            if val > best_val:
                # Top-down reconstruction of the maximizing sides.
                assign = {root: 0 if r0 >= r1 else 1}
                for v in order[1:]:
                    p = forest.parent[v]
                    w = graph.weight(forest.parent_edge[v])
                    s = assign[p]
                    assign[v] = s if dp[v][s] >= dp[v][1 - s] + w else 1 - s
                best_val = val
                best_assign = assign
        total += best_val
        for v, s in best_assign.items():
            bits |= s << v
    return _finish(graph, total, bits, "fpt", t0)


def spanning_tree_cut(graph: Graph) -> MaxCutResult:
    """Cut every spanning-forest edge by 2-coloring depth parity.

    Guarantees value >= m - mu: only non-tree edges can fail to cross.
    """
    t0 = time.perf_counter()
    forest = spanning_forest(graph)
    bits = 0
    for v in range(graph.n):
        bits |= (forest.depth[v] & 1) << v
    value = cut_value(graph, bits, weighted=True)
    return _finish(graph, value, bits, "tree", t0)


def verify_tree_partition(graph: Graph, parts) -> int:
    """Check the two partition invariants; returns the cross-edge count.

    Raises ValueError if the parts fail to partition V, some part does not
    induce a tree, or two parts are joined by more than one edge.
    """
    part_of = {}
    for i, p in enumerate(parts):
        for v in p:
            if v in part_of:
                raise ValueError(f"vertex {v} appears in two parts")
            part_of[v] = i
    if len(part_of) != graph.n:
        raise ValueError("parts do not cover every vertex")
    for i, p in enumerate(parts):
        pset = set(p)
        internal = [e for e, (u, v) in enumerate(graph.edges)
                    if u in pset and v in pset]
        if len(internal) != len(p) - 1:
            raise ValueError(f"part {i} does not induce a tree")
        if len(p) > 1:
            seen = {p[0]}
            queue = [p[0]]
            while queue:
                u = queue.pop()
                for v, e in graph.adj[u]:
                    if v in pset and v not in seen:
                        seen.add(v)
                        queue.append(v)
            if len(seen) != len(p):
                raise ValueError(f"part {i} induces a disconnected subgraph")
    cross_pairs = {}
    for u, v in graph.edges:
        a, b = part_of[u], part_of[v]
        if a != b:
            key = (min(a, b), max(a, b))
            cross_pairs[key] = cross_pairs.get(key, 0) + 1
            if cross_pairs[key] > 1:
                raise ValueError(f"parts {key} joined by more than one edge")
    return sum(cross_pairs.values())


def tree_partition(graph: Graph,
                   precomputed_girth: Optional[Girth] = None) -> TreePartition:
    """Partition V into vertex-disjoint trees by peeling depth-d subtrees.

    d = floor((g-3)/4).  While the spanning tree is deeper than d, the
    subtree rooted at the depth-d ancestor of the deepest leaf becomes a
    part and is removed; the remainder is the final part.  For d < 1 the
    construction degenerates to single-vertex parts (flagged); forests
    yield one part per component.  The returned partition is verified
    against both invariants before being returned.
    """
    g = precomputed_girth if precomputed_girth is not None else girth(graph)
    forest = spanning_forest(graph)
    if not g.finite:
        parts = [tuple(c) for c in components(graph)]
        d = None
        degenerate = False
    else:
        d = (int(g.value) - 3) // 4
        if d < 1:
            parts = [(v,) for v in range(graph.n)]
            degenerate = True
        else:
            degenerate = False
            children: list[list[int]] = [[] for _ in range(graph.n)]
            for v, p in enumerate(forest.parent):
                if p >= 0:
                    children[p].append(v)
            alive = [True] * graph.n
            parts = []
            for comp in _component_slices(forest):
                by_depth = sorted(comp, key=lambda v: (-forest.depth[v], v))
                remaining = len(comp)
                for u in by_depth:
                    if not alive[u] or remaining == 0:
                        continue
                    if forest.depth[u] < d:
                        break
                    a = u
                    for _ in range(d):
                        a = forest.parent[a]
                    part = []
                    stack = [a]
                    while stack:
                        x = stack.pop()
                        alive[x] = False
                        part.append(x)
                        stack.extend(c for c in children[x] if alive[c])
                    remaining -= len(part)
                    parts.append(tuple(sorted(part)))
                if remaining:
                    parts.append(tuple(sorted(v for v in comp if alive[v])))
    cross = verify_tree_partition(graph, parts)
    part_edges = []
    for p in parts:
        pset = set(p)
        part_edges.append(tuple(
            e for e, (u, v) in enumerate(graph.edges) if u in pset and v in pset
        ))
    return TreePartition(tuple(parts), tuple(part_edges), d, cross, degenerate)


def mu_certificate(graph: Graph,
                   precomputed_girth: Optional[Girth] = None) -> MuCertificate:
    """Report mu globally and per component, with the non-tree edge count."""
    g = precomputed_girth if precomputed_girth is not None else girth(graph)
    comps = components(graph)
    per = []
    for comp in comps:
        cset = set(comp)
        m_c = sum(1 for u, v in graph.edges if u in cset)
        per.append(m_c - len(comp) + 1)
    forest = spanning_forest(graph)
    mu = cyclomatic(graph)
    return MuCertificate(mu, tuple(per), g, len(forest.non_tree_edges),
                         bound_check=(len(forest.non_tree_edges) == mu))
