"""Simple undirected graphs with stable edge indexing.

Vertices are dense integers 0..n-1 and edge indices 0..m-1 follow input
order, so GF(2) vectors over edges and vertices are reproducible across
runs.  Graphs are immutable after construction; every operation here is a
pure function, safe to share across workers.

Also provides the structural primitives the rest of the package builds on
(girth, components, spanning forests, fundamental cycles) and deterministic
fixture generators for experiments.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

INFINITE = math.inf


class Graph:
    """Simple undirected graph; optionally edge-weighted.

    Weights are carried for the classical solvers only; all DQI-side code
    treats the graph as unweighted.
    """

    __slots__ = ("n", "m", "edges", "weights", "adj")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]],
                 weights: Optional[Sequence[float]] = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = []
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v))
        self.n = n
        self.m = len(norm)
        self.edges = tuple(norm)
        if weights is not None:
            if len(weights) != self.m:
                raise ValueError("weights length must match edge count")
            for w in weights:
                if w < 0:
                    raise ValueError("weights must be nonnegative")
            self.weights = tuple(float(w) for w in weights)
        else:
            self.weights = None
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx, (u, v) in enumerate(self.edges):
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        self.adj = tuple(tuple(a) for a in adj)

    def weight(self, edge_index: int) -> float:
        return 1.0 if self.weights is None else self.weights[edge_index]

    def __repr__(self):
        w = ", weighted" if self.weights is not None else ""
        return f"Graph(n={self.n}, m={self.m}{w})"


@dataclass(frozen=True)
class Girth:
    """Length of a shortest cycle; INFINITE for forests.

    Downstream consumers must branch on `finite` explicitly; the infinite
    value is math.inf, not a sentinel integer.
    """

    value: float  # positive int, or math.inf
    witness: Optional[tuple[int, ...]] = None

    @property
    def finite(self) -> bool:
        return self.value != INFINITE


@dataclass(frozen=True)
class SpanningForest:
    """BFS forest: parent/parent-edge per vertex, roots, and the edge split."""

    parent: tuple[int, ...]        # -1 at roots
    parent_edge: tuple[int, ...]   # -1 at roots
    depth: tuple[int, ...]
    roots: tuple[int, ...]
    order: tuple[int, ...]         # BFS visit order (parents precede children)
    tree_edges: tuple[int, ...]
    non_tree_edges: tuple[int, ...]


def components(graph: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * graph.n
    out = []
    for start in range(graph.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = [start]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v, _ in graph.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        out.append(sorted(comp))
    return out


def spanning_forest(graph: Graph) -> SpanningForest:
    """Deterministic BFS forest rooted at the smallest vertex of each component."""
    n = graph.n
    parent = [-1] * n
    parent_edge = [-1] * n
    depth = [0] * n
    seen = [False] * n
    roots = []
    order = []
    tree = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        roots.append(start)
        queue = [start]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            order.append(u)
            for v, e in graph.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    parent_edge[v] = e
                    depth[v] = depth[u] + 1
                    tree.append(e)
                    queue.append(v)
    tree_set = set(tree)
    non_tree = [e for e in range(graph.m) if e not in tree_set]
    return SpanningForest(tuple(parent), tuple(parent_edge), tuple(depth),
                          tuple(roots), tuple(order),
                          tuple(sorted(tree)), tuple(non_tree))


def cyclomatic(graph: Graph) -> int:
    """Cycle-space dimension m - n + #components (= non-tree edge count)."""
    return graph.m - graph.n + len(components(graph))


def girth(graph: Graph) -> Girth:
    """Exact girth via breadth-first search from every vertex.

    Each BFS records candidates dist(u) + dist(v) + 1 whenever a scanned
    edge (u, v) closes back onto a visited vertex.  A single root can
    overestimate the shortest cycle through it, but the minimum over all
    roots is exact, and a candidate achieving the minimum traces a simple
    cycle (reconstructed as the witness).
    """
    n = graph.n
    # Flattened adjacency keeps the hot loop free of tuple churn.
    nbr: list[list[int]] = [[] for _ in range(n)]
    eidx: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v, e in graph.adj[u]:
            nbr[u].append(v)
            eidx[u].append(e)
    dist = [-1] * n
    pedge = [-1] * n
    best = INFINITE
    best_at = None  # (root, u, v) closing edge of the best candidate
    for root in range(n):
        if not nbr[root]:
            continue
        # Candidates through vertices deeper than (best-1)//2 cannot improve.
        horizon = n if best == INFINITE else (int(best) - 1) // 2
        touched = [root]
        dist[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if du > horizon:
                break
            pe = pedge[u]
            dv1 = du + 1
            neighbors = nbr[u]
            edges_u = eidx[u]
            for i in range(len(neighbors)):
                e = edges_u[i]
                if e == pe:
                    continue
                v = neighbors[i]
                dv = dist[v]
                if dv < 0:
                    dist[v] = dv1
                    pedge[v] = e
                    touched.append(v)
                    queue.append(v)
                else:
                    cand = du + dv + 1
                    if cand < best:
                        best = cand
                        best_at = (root, u, v)
                        horizon = (cand - 1) // 2
        for v in touched:
            dist[v] = -1
            pedge[v] = -1
    if best_at is None:
        return Girth(INFINITE, None)
    return Girth(int(best), _witness_cycle(graph, *best_at))


def _witness_cycle(graph: Graph, root: int, u: int, v: int) -> tuple[int, ...]:
    # Re-run one BFS from the winning root to rebuild parent pointers.
    parent = [-1] * graph.n
    seen = [False] * graph.n
    seen[root] = True
    queue = [root]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for y, _ in graph.adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                queue.append(y)

    def path_to_root(x):
        path = [x]
        while path[-1] != root:
            path.append(parent[path[-1]])
        return path

    up = path_to_root(u)      # u .. root
    vp = path_to_root(v)      # v .. root
    cycle = list(reversed(up)) + vp[:-1]  # root..u, then v..(root excluded)
    return tuple(cycle)


def fundamental_cycles(graph: Graph, forest: SpanningForest):
    """One cycle per non-tree edge: the edge plus the tree path between its ends.

    Returned as edge BitVectors in non-tree edge index order.
    """
    from .parity import BitVector

    out = []
    depth = forest.depth
    parent = forest.parent
    parent_edge = forest.parent_edge
    for e in forest.non_tree_edges:
        u, v = graph.edges[e]
        bits = 1 << e
        du, dv = depth[u], depth[v]
        while du > dv:
            bits |= 1 << parent_edge[u]
            u = parent[u]
            du -= 1
        while dv > du:
            bits |= 1 << parent_edge[v]
            v = parent[v]
            dv -= 1
        while u != v:
            bits |= 1 << parent_edge[u]
            bits |= 1 << parent_edge[v]
            u = parent[u]
            v = parent[v]
        out.append(BitVector(bits, graph.m))
    return out


def cut_value(graph: Graph, assignment_bits: int, weighted: bool = False):
    """Number (or total weight) of edges whose endpoints lie on opposite sides.

    `assignment_bits` holds one bit per vertex (bit v = 1 means side 1).
    """
    if weighted and graph.weights is not None:
        total = 0.0
        for e, (u, v) in enumerate(graph.edges):
            if ((assignment_bits >> u) ^ (assignment_bits >> v)) & 1:
                total += graph.weights[e]
        return total
    count = 0
    for u, v in graph.edges:
        count += ((assignment_bits >> u) ^ (assignment_bits >> v)) & 1
    return count


# ---------------------------------------------------------------------------
# Fixture generators.  All are deterministic for a fixed spec and seed.

def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph(n, edges)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def theta(a: int, b: int, c: int) -> Graph:
    """Two hub vertices joined by three internally disjoint paths of a, b, c edges."""
    lengths = (a, b, c)
    if any(x < 1 for x in lengths):
        raise ValueError("theta path lengths must be >= 1")
    if sum(1 for x in lengths if x == 1) > 1:
        raise ValueError("at most one theta path may be a direct edge")
    edges = []
    nxt = 2
    for length in lengths:
        if length == 1:
            edges.append((0, 1))
            continue
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    return [(rng.randrange(v), v) for v in range(1, n)]


def tree_plus_chords(n: int, r: int, seed: int = 0) -> Graph:
    """Random tree on n vertices plus r random chords between non-adjacent vertices."""
    if n < 1:
        raise ValueError("need n >= 1")
    max_chords = n * (n - 1) // 2 - (n - 1)
    if r < 0 or r > max_chords:
        raise ValueError(f"chord count {r} not in [0, {max_chords}]")
    rng = random.Random(seed)
    edges = _random_tree_edges(n, rng)
    present = set(tuple(sorted(e)) for e in edges)
    added = 0
    while added < r:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in present:
            continue
        present.add(key)
        edges.append(key)
        added += 1
    return Graph(n, edges)


def random_connected(n: int, m: int, seed: int = 0) -> Graph:
    """Random connected graph: random tree plus m - (n-1) distinct extra edges."""
    if n < 1:
        raise ValueError("need n >= 1")
    if m < n - 1:
        raise ValueError(f"need m >= n-1 = {n - 1} for connectivity")
    if m > n * (n - 1) // 2:
        raise ValueError(f"m = {m} exceeds the simple-graph maximum")
    rng = random.Random(seed)
    edges = _random_tree_edges(n, rng)
    present = set(tuple(sorted(e)) for e in edges)
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in present:
            continue
        present.add(key)
        edges.append(key)
    return Graph(n, edges)


def generate(spec: str, seed: int = 0) -> Graph:
    """Build a fixture graph from a spec string.

    Accepted forms: cycle:N, path:N, complete:N, theta:A,B,C, petersen,
    tree_plus_chords:N,R, random_connected:N,M.  The seed feeds the random
    families; identical spec+seed yields an identical edge list.
    """
    name, _, argtext = spec.partition(":")
    name = name.strip()
    try:
        args = [int(x) for x in argtext.split(",")] if argtext else []
    except ValueError:
        raise ValueError(f"malformed generator arguments in {spec!r}") from None
    families = {
        "cycle": (cycle, 1), "path": (path, 1), "complete": (complete, 1),
        "theta": (theta, 3), "petersen": (petersen, 0),
        "tree_plus_chords": (tree_plus_chords, 2),
        "random_connected": (random_connected, 2),
    }
    if name not in families:
        raise ValueError(f"unknown generator {name!r}")
    fn, arity = families[name]
    if len(args) != arity:
        raise ValueError(f"{name} takes {arity} arguments, got {len(args)}")
    if name in ("tree_plus_chords", "random_connected"):
        return fn(*args, seed=seed)
    return fn(*args)


# ---------------------------------------------------------------------------
# Edge-list interchange format: header "n m", then "u v [w]" per edge,
# '#' comments allowed.  The writer emits edges in index order.

def parse_edge_list(text: str) -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    weights = []
    any_weight = False
    for line in lines[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"malformed edge line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
        if len(parts) == 3:
            any_weight = True
            weights.append(float(parts[2]))
        else:
            weights.append(1.0)
    return Graph(n, edges, weights if any_weight else None)


def read_edge_list(path_: str) -> Graph:
    with open(path_, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    for e, (u, v) in enumerate(graph.edges):
        if graph.weights is not None:
            lines.append(f"{u} {v} {format(graph.weights[e], 'g')}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def write_edge_list(graph: Graph, path_: str) -> None:
    with open(path_, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(graph))
