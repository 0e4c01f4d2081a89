"""Combinatorial plane embeddings, faces, dual graphs, and face covers.

An embedding is a rotation system: for every vertex, the counterclockwise
cyclic order of its incident darts.  Edge e = (u, v) owns dart 2e (from u
to v) and dart 2e+1 (from v to u).  Faces are the orbits of the
"next dart clockwise after the twin" successor map; with counterclockwise
rotations, interior faces come out counterclockwise and the outer face
clockwise, which is how geometric constructors detect it.

Everything here is immutable after construction and safe to query
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Multigraph, is_connected


class NonPlanarError(Exception):
    """Raised when a graph admits no plane embedding."""


def _dart_tail(g: Multigraph, d: int) -> int:
    u, v = g.edges[d >> 1]
    return u if d & 1 == 0 else v


def _dart_head(g: Multigraph, d: int) -> int:
    u, v = g.edges[d >> 1]
    return v if d & 1 == 0 else u


class PlaneEmbedding:
    """Rotation system plus the derived face structure."""

    __slots__ = ("graph", "rotation", "faces", "face_of_dart", "outer_face",
                 "_frontier_sets")

    def __init__(self, graph: Multigraph, rotation, outer_face: int | None = None):
        self.graph = graph
        rot = tuple(tuple(r) for r in rotation)
        if len(rot) != graph.n:
            raise ValueError("rotation must list every vertex")
        seen = set()
        for v, darts in enumerate(rot):
            for d in darts:
                if not 0 <= d < 2 * graph.m or d in seen:
                    raise ValueError(f"dart {d} repeated or out of range")
                if _dart_tail(graph, d) != v:
                    raise ValueError(f"dart {d} listed at vertex {v}, tails elsewhere")
                seen.add(d)
        if len(seen) != 2 * graph.m:
            raise ValueError("rotation misses some darts")
        self.rotation = rot
        self.faces = tuple(_trace_faces(graph, rot))
        fod = [0] * (2 * graph.m)
        for fid, orbit in enumerate(self.faces):
            for d in orbit:
                fod[d] = fid
        self.face_of_dart = tuple(fod)
        if is_connected(graph) and graph.n - graph.m + max(len(self.faces), 1) != 2:
            raise NonPlanarError(
                f"rotation has genus > 0: n={graph.n} m={graph.m} f={len(self.faces)}")
        if outer_face is None:
            outer_face = self.face_of_dart[_default_outer_dart(graph)] if graph.m else 0
        self.outer_face = outer_face
        self._frontier_sets = tuple(
            frozenset(_dart_tail(graph, d) for d in orbit) for orbit in self.faces)

    @property
    def face_count(self) -> int:
        return max(len(self.faces), 1)

    def face_length(self, fid: int) -> int:
        return len(self.faces[fid])

    def frontier_vertices(self, fid: int) -> frozenset:
        return self._frontier_sets[fid]

    def frontier_walk(self, fid: int):
        """(vertices, edge ids) along the face orbit, in traversal order."""
        orbit = self.faces[fid]
        verts = tuple(_dart_tail(self.graph, d) for d in orbit)
        edges = tuple(d >> 1 for d in orbit)
        return verts, edges

    def frontier_cycle(self, fid: int):
        """Like frontier_walk but requires each vertex to occur once."""
        verts, edges = self.frontier_walk(fid)
        if len(set(verts)) != len(verts):
            raise ValueError(f"frontier of face {fid} is not a simple cycle")
        return verts, edges


def _default_outer_dart(g: Multigraph) -> int:
    u, v = g.edges[0]
    return 0 if u <= v else 1


def _trace_faces(g: Multigraph, rot):
    pos = {}
    for v, darts in enumerate(rot):
        for i, d in enumerate(darts):
            pos[d] = (v, i)
    faces = []
    visited = [False] * (2 * g.m)
    for start in range(2 * g.m):
        if visited[start]:
            continue
        orbit = []
        d = start
        while not visited[d]:
            visited[d] = True
            orbit.append(d)
            twin = d ^ 1
            v, i = pos[twin]
            darts = rot[v]
            d = darts[i - 1]  # clockwise step = backwards in ccw order
        faces.append(tuple(orbit))
    if g.m == 0:
        faces.append(tuple())
    return faces


def embed(g: Multigraph) -> PlaneEmbedding:
    """Compute some plane embedding of a connected multigraph.

    Parallel edges and loops are subdivided away, the simple graph is
    embedded with networkx's planarity test, and the subdivision points
    are contracted back out of the rotation.  Raises NonPlanarError when
    no embedding exists.
    """
    import networkx as nx

    if not is_connected(g):
        raise ValueError("embed requires a connected graph")
    if g.m == 0:
        return PlaneEmbedding(g, [()] * g.n)
    sg = nx.Graph()
    sg.add_nodes_from(range(g.n))
    # node -> dart it stands for, from the viewpoint of the original endpoint
    dart_of_mid = {}
    nxt = g.n
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            a, b = nxt, nxt + 1
            nxt += 2
            sg.add_edge(u, a)
            sg.add_edge(a, b)
            sg.add_edge(b, v)
            dart_of_mid[(u, a)] = 2 * e
            dart_of_mid[(v, b)] = 2 * e + 1
        else:
            x = nxt
            nxt += 1
            sg.add_edge(u, x)
            sg.add_edge(x, v)
            dart_of_mid[(u, x)] = 2 * e
            dart_of_mid[(v, x)] = 2 * e + 1
    ok, nxemb = nx.check_planarity(sg)
    if not ok:
        raise NonPlanarError("graph has no plane embedding")
    rotation = []
    for v in range(g.n):
        cw = list(nxemb.neighbors_cw_order(v))
        rotation.append(tuple(dart_of_mid[(v, x)] for x in reversed(cw)))
    return PlaneEmbedding(g, rotation)


def embedding_from_coordinates(g: Multigraph, coords) -> PlaneEmbedding:
    """Embedding of a straight-line drawn simple graph.

    Rotations sort incident edges counterclockwise by angle; the outer
    face is detected as the unique clockwise (negative signed area)
    orbit.
    """
    if not g.is_simple():
        raise ValueError("coordinate embedding needs a simple graph")
    rotation = []
    for v in range(g.n):
        darts = []
        for e, w in g.incident(v):
            u0, _ = g.edges[e]
            d = 2 * e if u0 == v else 2 * e + 1
            x0, y0 = coords[v]
            x1, y1 = coords[w]
            darts.append((math.atan2(y1 - y0, x1 - x0), d))
        darts.sort()
        rotation.append(tuple(d for _, d in darts))
    emb = PlaneEmbedding(g, rotation)
    outer = None
    for fid, orbit in enumerate(emb.faces):
        verts = [_dart_tail(g, d) for d in orbit]
        area = 0.0
        for i, v in enumerate(verts):
            w = verts[(i + 1) % len(verts)]
            area += coords[v][0] * coords[w][1] - coords[w][0] * coords[v][1]
        if area < 0:
            if outer is not None:
                raise ValueError("ambiguous outer face; drawing is not planar")
            outer = fid
    if outer is None:
        raise ValueError("no clockwise face; drawing is not planar")
    return PlaneEmbedding(g, rotation, outer_face=outer)


@dataclass(frozen=True)
class DualGraph:
    """Dual multigraph over faces.

    Dual edge ids equal primal edge ids (the bijection e <-> e* is the
    identity on ids): dual edge e joins the faces on the two sides of
    primal edge e, and is a self-loop exactly when e is a bridge.
    """

    dual: Multigraph
    embedding: PlaneEmbedding

    def primal_edge(self, dual_edge: int) -> int:
        return dual_edge

    def dual_edge(self, primal_edge: int) -> int:
        return primal_edge


def dual(g: Multigraph, emb: PlaneEmbedding) -> DualGraph:
    endpoints = [(emb.face_of_dart[2 * e], emb.face_of_dart[2 * e + 1])
                 for e in range(g.m)]
    return DualGraph(Multigraph(emb.face_count, endpoints), emb)


@dataclass(frozen=True)
class FaceCover:
    faces: frozenset
    covered: dict  # terminal -> some covering face in `faces`


def face_cover(g: Multigraph, emb: PlaneEmbedding, terminals, r: int):
    """A set of at most r faces whose frontiers cover all terminals.

    Exact branching on the red-blue domination view (faces dominate the
    terminals on their frontiers): always branch on the uncovered
    terminal with the fewest candidate faces, prune dominated candidates,
    and memoize failed uncovered-sets per remaining budget.  Returns a
    FaceCover or None when no cover of size <= r exists.
    """
    terminals = frozenset(terminals)
    if not terminals:
        return FaceCover(frozenset(), {})
    cand = {t: frozenset(f for f in range(emb.face_count)
                         if t in emb.frontier_vertices(f))
            for t in terminals}
    if any(not c for c in cand.values()):
        return None
    failed: dict = {}  # uncovered set -> largest budget that already failed

    def search(uncovered: frozenset, budget: int):
        if not uncovered:
            return []
        if budget == 0:
            return None
        if failed.get(uncovered, -1) >= budget:
            return None
        t = min(uncovered, key=lambda x: (len(cand[x]), x))
        # dominance: only try faces whose covered set is maximal
        options = []
        for f in sorted(cand[t]):
            covers = emb.frontier_vertices(f) & uncovered
            options.append((f, covers))
        maximal = [(f, cov) for f, cov in options
                   if not any(cov < cov2 for _, cov2 in options)]
        for f, cov in maximal:
            rest = search(uncovered - cov, budget - 1)
            if rest is not None:
                return [f] + rest
        failed[uncovered] = max(failed.get(uncovered, -1), budget)
        return None

    chosen = search(terminals, r)
    if chosen is None:
        return None
    faces = frozenset(chosen)
    covered = {}
    for t in terminals:
        covered[t] = min(f for f in faces if t in emb.frontier_vertices(f))
    return FaceCover(faces, covered)


def crossing_parity(path_edges, cycle_dual_edges) -> int:
    """Parity of crossings between a primal path and a dual cycle.

    Dual edge ids coincide with primal ids, so this is just the parity
    of the intersection.  Odd parity means the path endpoints lie in
    different faces of the dual cycle.
    """
    return len(frozenset(path_edges) & frozenset(cycle_dual_edges)) & 1
