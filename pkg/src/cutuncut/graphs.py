"""Undirected multigraphs and the traversal utilities the solvers share.

Vertices are dense ints 0..n-1 and edge ids are dense ints 0..m-1 in
insertion order.  Parallel edges and self-loops are allowed.  Graphs are
immutable after construction; every "modification" below returns a new
graph together with an id mapping back to the original, so solver
pipelines can translate witnesses back through arbitrary chains of
deletions and relabelings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class Multigraph:
    """Immutable undirected multigraph with stable edge ids."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, endpoints):
        edges = []
        for u, v in endpoints:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) references a vertex outside [0,{n})")
            edges.append((u, v))
        self.n = n
        self.edges = tuple(edges)
        adj = [[] for _ in range(n)]
        for e, (u, v) in enumerate(edges):
            adj[u].append((e, v))
            if u != v:
                adj[v].append((e, u))
        self._adj = tuple(tuple(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, u: int):
        """Pairs (edge id, other endpoint) for edges at u; loops appear once."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        # a loop contributes 2 to the degree
        return sum(2 if self.edges[e][0] == self.edges[e][1] else 1
                   for e, _ in self._adj[u])

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def delete_edges(self, dead) -> tuple["Multigraph", list[int]]:
        """New graph without the given edge ids; returns (graph, new->old ids)."""
        dead = set(dead)
        keep = [e for e in range(self.m) if e not in dead]
        g = Multigraph(self.n, [self.edges[e] for e in keep])
        return g, keep

    def induced(self, vertices) -> tuple["Multigraph", list[int], list[int]]:
        """Subgraph induced on a vertex set.

        Returns (graph, new->old vertex ids, new->old edge ids).
        """
        vs = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(vs)}
        keep, endpoints = [], []
        for e, (u, v) in enumerate(self.edges):
            if u in idx and v in idx:
                keep.append(e)
                endpoints.append((idx[u], idx[v]))
        return Multigraph(len(vs), endpoints), vs, keep

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"


def build_multigraph(n: int, endpoints) -> Multigraph:
    return Multigraph(n, endpoints)


@dataclass(frozen=True)
class Cut:
    """Bipartition (side_a, side_b) with its crossing edge set."""

    side_a: frozenset
    side_b: frozenset
    cut_edges: frozenset

    @property
    def size(self) -> int:
        return len(self.cut_edges)


def cut_set(g: Multigraph, a) -> frozenset:
    """Edge ids with exactly one endpoint in a."""
    a = set(a)
    return frozenset(e for e, (u, v) in enumerate(g.edges) if (u in a) != (v in a))


def make_cut(g: Multigraph, a) -> Cut:
    a = frozenset(a)
    b = frozenset(range(g.n)) - a
    return Cut(a, b, cut_set(g, a))


def connected_components(g: Multigraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp, queue = [], deque([s])
        seen[s] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for _, w in g.incident(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(comp)
    return comps


def component_of(g: Multigraph, s: int) -> set:
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for _, w in g.incident(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_connected(g: Multigraph) -> bool:
    return g.n <= 1 or len(component_of(g, 0)) == g.n


def cut_vertices(g: Multigraph) -> set:
    """Articulation vertices of a connected multigraph (iterative lowpoint DFS)."""
    if not is_connected(g):
        raise ValueError("cut_vertices requires a connected graph")
    disc = [-1] * g.n
    low = [0] * g.n
    parent_edge = [-1] * g.n
    result = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        root_children = 0
        stack = [(root, iter(g.incident(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, it = stack[-1]
            advanced = False
            for e, w in it:
                if w == u:
                    continue  # self-loops never matter for articulation
                if disc[w] == -1:
                    parent_edge[w] = e
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, iter(g.incident(w))))
                    advanced = True
                    break
                elif e != parent_edge[u]:
                    low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if p != root and low[u] >= disc[p]:
                        result.add(p)
        if root_children >= 2:
            result.add(root)
    return result


def is_biconnected(g: Multigraph) -> bool:
    return is_connected(g) and not cut_vertices(g)


@dataclass(frozen=True)
class Tree:
    """A tree inside a host graph: edge ids plus the spanned vertex set."""

    edges: frozenset
    vertices: frozenset
    root: int


def spanning_tree_pruned(g: Multigraph, r) -> Tree:
    """Inclusion-minimal tree spanning the vertex set r.

    BFS from the lowest-index vertex of r (neighbors in edge-id order),
    then repeatedly drop leaves outside r.  Deterministic; every leaf of
    the result is in r.
    """
    r = set(r)
    if not r:
        raise ValueError("r must be nonempty")
    root = min(r)
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e, w in g.incident(u):
            if w not in parent:
                parent[w] = e
                order.append(w)
                queue.append(w)
    missing = r - set(parent)
    if missing:
        raise ValueError(f"vertices {sorted(missing)} unreachable from {root}")
    # keep only branches that lead to r
    needed = set()
    keep_edges = set()
    for v in r:
        u = v
        while u not in needed:
            needed.add(u)
            e = parent[u]
            if e is None:
                break
            keep_edges.add(e)
            a, b = g.edges[e]
            u = a if b == u else b
    return Tree(frozenset(keep_edges), frozenset(needed), root)


def tree_path(tree: Tree, g: Multigraph, u: int, v: int) -> frozenset:
    """Edge ids of the unique u-v path in the tree."""
    if u not in tree.vertices or v not in tree.vertices:
        raise ValueError("endpoint not in tree")
    if u == v:
        return frozenset()
    adj = {}
    for e in tree.edges:
        a, b = g.edges[e]
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for e, w in adj.get(x, ()):
            if w not in prev:
                prev[w] = (e, x)
                queue.append(w)
    path = set()
    x = v
    while prev[x] is not None:
        e, x = prev[x]
        path.add(e)
    return frozenset(path)


@dataclass(frozen=True)
class SubdivisionMap:
    """Result of subdividing a multigraph into a simple graph.

    Each kept (non-loop) edge j of the original becomes two edges
    2j' and 2j'+1 through a fresh midpoint vertex; the half incident to
    the lower-numbered endpoint (id 2j') is the carrier of the original
    edge's label, the other half carries zero.  Solution lengths in the
    simple graph are exactly twice the original lengths.
    """

    simple: Multigraph
    kept_edges: tuple        # original edge ids that survive (loops dropped)
    label_carrier: dict      # original edge id -> simple edge id
    midpoint: dict           # original edge id -> subdivision vertex
    length_factor: int = 2


def subdivide_to_simple(g: Multigraph) -> SubdivisionMap:
    kept = [e for e in range(g.m) if not g.is_loop(e)]
    endpoints = []
    carrier, midpoint = {}, {}
    for j, e in enumerate(kept):
        u, v = g.edges[e]
        lo, hi = (u, v) if u <= v else (v, u)
        x = g.n + j
        carrier[e] = 2 * j
        midpoint[e] = x
        endpoints.append((lo, x))
        endpoints.append((x, hi))
    simple = Multigraph(g.n + len(kept), endpoints)
    return SubdivisionMap(simple, tuple(kept), carrier, midpoint)
