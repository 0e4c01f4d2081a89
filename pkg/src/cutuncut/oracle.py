"""Exhaustive reference solvers for desk-scale verification.

Everything in this module answers by direct enumeration against the
problem definitions: bipartitions for cuts, depth-first path and cycle
enumeration for constrained routing, subset search for face covers, and
ray casting against straight-line drawings for above/below face tests.
None of it shares traversal code or field arithmetic with the randomized
solvers; independence from the solver code paths is the point.

All oracles are deterministic and seed-free.  They refuse instances
beyond a configurable budget instead of silently taking forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import Multigraph, Cut, cut_set


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 12
    max_paths: int = 500_000


DEFAULT_BUDGET = OracleBudget()


def _check_budget(g: Multigraph, budget: OracleBudget):
    if g.n > budget.max_vertices:
        raise ValueError(
            f"oracle budget exceeded: {g.n} > {budget.max_vertices} vertices")


def _components_under(n, edges, removed):
    adj = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        if e not in removed:
            adj[u].append(v)
            adj[v].append(u)
    comp = [-1] * n
    c = 0
    for s in range(n):
        if comp[s] != -1:
            continue
        stack = [s]
        comp[s] = c
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def _side_connected(g: Multigraph, side) -> bool:
    side = set(side)
    if not side:
        return False
    start = next(iter(side))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for _, w in g.incident(u):
            if w in side and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == side


def brute_cut_uncut(g: Multigraph, side_s, side_t,
                    budget: OracleBudget = DEFAULT_BUDGET) -> Cut | None:
    """Minimum cut keeping S together on one side and T together on the other.

    Tries every assignment of the free vertices; a bipartition qualifies
    when all of S shares one component of its side and all of T shares
    one component of the other (the sides themselves may fall apart).
    """
    _check_budget(g, budget)
    side_s, side_t = set(side_s), set(side_t)
    free = sorted(set(range(g.n)) - side_s - side_t)
    best = None
    for bits in range(1 << len(free)):
        a = set(side_s)
        for i, v in enumerate(free):
            if bits >> i & 1:
                a.add(v)
        comp = _components_under(g.n, g.edges, cut_set(g, a))
        if len({comp[v] for v in side_s}) != 1:
            continue
        if len({comp[v] for v in side_t}) != 1:
            continue
        edges = cut_set(g, a)
        if best is None or len(edges) < len(best[0]):
            best = (edges, frozenset(a))
    if best is None:
        return None
    edges, a = best
    return Cut(a, frozenset(range(g.n)) - a, edges)


def _simple_paths(g: Multigraph, s, t, cap):
    """Yield (vertices, edges) for every simple s-t path, edge-distinct."""
    count = 0
    stack = [(s, [s], [], {s})]
    while stack:
        u, verts, edges, seen = stack.pop()
        if u == t:
            yield tuple(verts), tuple(edges)
            count += 1
            if count > cap:
                raise ValueError("oracle path budget exceeded")
            continue
        for e, w in g.incident(u):
            if w not in seen:
                stack.append((w, verts + [w], edges + [e], seen | {w}))


def brute_xor_path(inst, budget: OracleBudget = DEFAULT_BUDGET):
    """Shortest feasible path by enumeration; (vertices, edges) or None."""
    g = inst.graph
    _check_budget(g, budget)
    if inst.s == inst.t:
        return ((inst.s,), ()) if inst.target == 0 else None
    best = None
    for verts, edges in _simple_paths(g, inst.s, inst.t, budget.max_paths):
        acc = 0
        for e in edges:
            acc ^= inst.labels[e]
        if acc != inst.target:
            continue
        vs = set(verts)
        if any(len(vs & xs) > 1 for xs in inst.visit_once):
            continue
        if best is None or len(edges) < len(best[1]):
            best = (verts, edges)
    return best


def enumerate_simple_cycles(g: Multigraph):
    """Yield (vertices, edges) for every simple cycle, once per cycle.

    Length-1 cycles are self-loops, length-2 cycles are pairs of distinct
    parallel edges, longer cycles visit distinct vertices.  Each cycle is
    anchored at its lowest vertex and its lowest-id incident cycle edge.
    """
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            yield (u,), (e,)
    for e1, e2 in combinations(range(g.m), 2):
        a = frozenset(g.edges[e1])
        if len(a) == 2 and a == frozenset(g.edges[e2]):
            u, v = sorted(a)
            yield (u, v), (e1, e2)
    # longer cycles: paths from the anchor vertex back to itself
    for start in range(g.n):
        # (current, verts, edges)
        stack = [(start, [start], [])]
        while stack:
            u, verts, edges = stack.pop()
            for e, w in g.incident(u):
                if u == w or e in edges:
                    continue
                if w == start and len(verts) >= 3:
                    # canonical: anchored at the minimum vertex, with the
                    # traversal direction fixed by second < last vertex
                    if verts[1] < verts[-1]:
                        yield tuple(verts), tuple(edges + [e])
                    continue
                if w in verts or w < start:
                    continue
                stack.append((w, verts + [w], edges + [e]))


def brute_xor_cycle(inst, budget: OracleBudget = DEFAULT_BUDGET):
    """Shortest feasible cycle by enumeration; (vertices, edges) or None."""
    g = inst.graph
    _check_budget(g, budget)
    best = None
    for verts, edges in enumerate_simple_cycles(g):
        acc = 0
        for e in edges:
            acc ^= inst.labels[e]
        if acc != inst.target:
            continue
        vs = set(verts)
        if any(len(vs & xs) > 1 for xs in inst.visit_once):
            continue
        if best is None or len(edges) < len(best[1]):
            best = (verts, edges)
    return best


def brute_face_cover(g: Multigraph, emb, terminals,
                     budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Minimum number of faces covering the terminals, by subset search."""
    _check_budget(g, budget)
    terminals = frozenset(terminals)
    if not terminals:
        return 0
    fronts = [emb.frontier_vertices(f) for f in range(emb.face_count)]
    for size in range(1, emb.face_count + 1):
        for chosen in combinations(range(emb.face_count), size):
            covered = set()
            for f in chosen:
                covered |= fronts[f]
            if terminals <= covered:
                return size
    raise ValueError("some terminal lies on no face")


def brute_diversion(g: Multigraph, s, t, diversion_edges,
                    budget: OracleBudget = DEFAULT_BUDGET) -> Cut | None:
    """Minimum s-t cut with connected sides whose cut-set contains all
    the diversion edges, by enumerating connected bipartitions."""
    _check_budget(g, budget)
    need = frozenset(diversion_edges)
    free = sorted(set(range(g.n)) - {s, t})
    best = None
    for bits in range(1 << len(free)):
        a = {s}
        for i, v in enumerate(free):
            if bits >> i & 1:
                a.add(v)
        b = set(range(g.n)) - a
        edges = cut_set(g, a)
        if not need <= edges:
            continue
        if not _side_connected(g, a) or not _side_connected(g, b):
            continue
        if best is None or len(edges) < len(best[0]):
            best = (edges, frozenset(a))
    if best is None:
        return None
    edges, a = best
    return Cut(a, frozenset(range(g.n)) - a, edges)


# ---------------------------------------------------------------------------
# geometric oracle for face-constrained interior paths
# ---------------------------------------------------------------------------

def _point_in_polygon(x, y, poly) -> bool:
    """Ray casting; poly is a list of (x, y) corners."""
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xi:
                inside = not inside
    return inside


def _face_probe(coords, corners):
    xs = [coords[v][0] for v in corners]
    ys = [coords[v][1] for v in corners]
    return sum(xs) / len(xs), sum(ys) / len(ys)


def brute_face_constrained_path(g: Multigraph, coords, s, t, outer_vertices,
                                lower_arc, faces_above, faces_below,
                                budget: OracleBudget = DEFAULT_BUDGET):
    """Shortest interior s-t path with prescribed faces above and below.

    `outer_vertices` is the whole outer frontier (interior paths may only
    touch it at s and t); `lower_arc` lists the outer-cycle vertices from
    t back to s along the lower side; `faces_above`/`faces_below` give
    each face by its corner vertices (faces must be convex in the drawing
    so the corner centroid lies inside).  A path qualifies when, after
    closing it with the lower arc, every above-face centroid lies outside
    the resulting polygon and every below-face centroid inside.  Purely
    geometric; independent of the combinatorial embedding machinery.
    """
    _check_budget(g, budget)
    outer = set(outer_vertices) - {s, t}
    best = None
    for verts, edges in _simple_paths(g, s, t, budget.max_paths):
        if any(v in outer for v in verts[1:-1]):
            continue
        if len(verts) < 2:
            continue
        poly = [coords[v] for v in verts] + [coords[v] for v in lower_arc[1:-1]]
        ok = True
        for corners in faces_above:
            px, py = _face_probe(coords, corners)
            if _point_in_polygon(px, py, poly):
                ok = False
                break
        if ok:
            for corners in faces_below:
                px, py = _face_probe(coords, corners)
                if not _point_in_polygon(px, py, poly):
                    ok = False
                    break
        if ok and (best is None or len(edges) < len(best[1])):
            best = (verts, edges)
    return best
