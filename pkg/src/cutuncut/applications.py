"""Applications of the cut-uncut solver.

Network diversion: force a given set of edges to become the
bottleneck - find a minimal s-t cut of bounded size whose cut-set
contains all of them.  Reduces to cut-uncut by guessing, for each forced
edge, which endpoint ends up on s's side.

Face-constrained interior paths: in a plane graph with s and t on the
outer face, find a shortest path avoiding the rest of the outer frontier
such that prescribed interior faces end up above respectively below the
path.  Closing the path with a new s-t edge drawn over the top of the
graph turns the above/below requirements into a two-sets cut-uncut
instance on the dual.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Multigraph, Cut, component_of, cut_set
from .planar import PlaneEmbedding, dual
from .solver import CutUncutInstance, solve
from .xorpath import PathWitness, SolverConfig, SolverError


@dataclass(frozen=True)
class DiversionInstance:
    graph: Multigraph
    s: int
    t: int
    diversion_edges: frozenset
    budget: int
    embedding: PlaneEmbedding | None = None

    def __post_init__(self):
        if self.s == self.t:
            raise ValueError("s and t must differ")
        if not self.diversion_edges:
            raise ValueError("need at least one diversion edge")
        object.__setattr__(self, "diversion_edges",
                           frozenset(self.diversion_edges))
        if any(not 0 <= e < self.graph.m for e in self.diversion_edges):
            raise ValueError("diversion edge id out of range")


def _diversion_valid(inst: DiversionInstance, cut: Cut) -> bool:
    g = inst.graph
    if len(cut.cut_edges) > inst.budget:
        return False
    if not inst.diversion_edges <= cut.cut_edges:
        return False
    if inst.s not in cut.side_a or inst.t not in cut.side_b:
        return False
    for side in (cut.side_a, cut.side_b):
        start = next(iter(side))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for _, w in g.incident(u):
                if w in side and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != side:
            return False
    return cut_set(g, cut.side_a) == cut.cut_edges


def generalized_network_diversion(inst: DiversionInstance,
                                  cfg: SolverConfig = SolverConfig()) -> Cut | None:
    """Minimum minimal s-t cut containing all diversion edges, or None.

    Tries the 2^|B| ways of putting one endpoint of each forced edge on
    s's side and the other on t's, skipping contradictory assignments
    (some vertex forced onto both sides), and keeps the best verified
    cut.  Inherits the cut solver's one-sided error.
    """
    g = inst.graph
    blist = sorted(inst.diversion_edges)
    if any(g.is_loop(e) for e in blist):
        return None  # a loop never crosses any cut
    best = None
    seen_assignments = set()
    for bits in range(1 << len(blist)):
        side_s, side_t = {inst.s}, {inst.t}
        ok = True
        for i, e in enumerate(blist):
            u, v = g.edges[e]
            if bits >> i & 1:
                u, v = v, u
            side_s.add(u)
            side_t.add(v)
            if u in side_t or v in side_s:
                ok = False
                break
        if not ok or side_s & side_t:
            continue
        key = (frozenset(side_s), frozenset(side_t))
        if key in seen_assignments:
            continue
        seen_assignments.add(key)
        sub = CutUncutInstance(g, key[0], key[1], inst.budget, inst.embedding)
        ans = solve(sub, cfg)
        if ans is None:
            continue
        oriented = ans if inst.s in ans.side_a else \
            Cut(ans.side_b, ans.side_a, ans.cut_edges)
        if not _diversion_valid(inst, oriented):
            continue
        if best is None or oriented.size < best.size:
            best = oriented
    return best


def network_diversion(inst: DiversionInstance,
                      cfg: SolverConfig = SolverConfig()) -> Cut | None:
    """Single-edge diversion: both side assignments of the one forced edge."""
    if len(inst.diversion_edges) != 1:
        raise ValueError("network_diversion takes exactly one diversion edge")
    return generalized_network_diversion(inst, cfg)


# ---------------------------------------------------------------------------
# face-constrained interior shortest path
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FacePathInstance:
    """Plane graph, outer-face endpoints, and face sets to keep above/below.

    The outer frontier must be a simple cycle through s and t.  Its arc
    from s to t in face-traversal order is the upper arc: a solution path
    closed with the remaining (lower) arc must leave every `faces_above`
    region outside and every `faces_below` region inside.
    """

    graph: Multigraph
    embedding: PlaneEmbedding
    s: int
    t: int
    faces_above: frozenset
    faces_below: frozenset

    def __post_init__(self):
        object.__setattr__(self, "faces_above", frozenset(self.faces_above))
        object.__setattr__(self, "faces_below", frozenset(self.faces_below))
        if self.s == self.t:
            raise ValueError("s and t must differ")
        if self.faces_above & self.faces_below:
            raise ValueError("a face cannot be both above and below")
        outer = self.embedding.outer_face
        if outer in self.faces_above | self.faces_below:
            raise ValueError("constraint faces must be interior")
        fr = self.embedding.frontier_vertices(outer)
        if self.s not in fr or self.t not in fr:
            raise ValueError("s and t must lie on the outer frontier")


def _induced_embedding(g: Multigraph, emb: PlaneEmbedding, keep_vertices):
    """Induced subgraph with its induced rotation; returns maps to the input."""
    sub, vkeep, ekeep = g.induced(keep_vertices)
    new_edge = {old: new for new, old in enumerate(ekeep)}
    rotation = []
    for v in vkeep:
        darts = []
        for d in emb.rotation[v]:
            e = d >> 1
            if e in new_edge:
                darts.append(2 * new_edge[e] | (d & 1))
        rotation.append(tuple(darts))
    return sub, vkeep, ekeep, rotation


def face_constrained_path(inst: FacePathInstance,
                          cfg: SolverConfig = SolverConfig()) -> PathWitness | None:
    """Shortest interior s-t path with the prescribed faces above/below.

    Faces whose frontier touches the deleted outer vertices are resolved
    directly: a region reaching the upper arc lies above every interior
    path (and one reaching the lower arc below), so it either drops out
    as automatically satisfied or certifies infeasibility.  The surviving
    faces, together with the two faces created by closing the graph with
    a fresh s-t edge drawn over the top, become the terminal sets of a
    cut-uncut instance on the dual: the cut-cycle found there is the new
    edge plus the answer path.
    """
    g, emb = inst.graph, inst.embedding
    overts, _ = emb.frontier_cycle(emb.outer_face)
    si, ti = overts.index(inst.s), overts.index(inst.t)
    n_out = len(overts)
    upper, lower = [], []
    k = si
    while k != ti:
        upper.append(overts[k])
        k = (k + 1) % n_out
    while k != si:
        lower.append(overts[k])
        k = (k + 1) % n_out
    o_up = set(upper) - {inst.s}
    o_low = set(lower) - {inst.t}
    surviving_above, surviving_below = [], []
    for fid in sorted(inst.faces_above):
        touch = emb.frontier_vertices(fid) & (o_up | o_low)
        if touch & o_low:
            return None  # the region reaches the lower arc: never above
        if not touch:
            surviving_above.append(fid)
    for fid in sorted(inst.faces_below):
        touch = emb.frontier_vertices(fid) & (o_up | o_low)
        if touch & o_up:
            return None
        if not touch:
            surviving_below.append(fid)

    keep = set(range(g.n)) - o_up - o_low
    g1, vmap, emap, rotation = _induced_embedding(g, emb, keep)
    pos = {old: new for new, old in enumerate(vmap)}
    s1, t1 = pos[inst.s], pos[inst.t]
    comp = component_of(g1, s1)
    if t1 not in comp:
        return None
    if len(comp) != g1.n:
        g1b, vkeep2, ekeep2 = g1.induced(comp)
        for fid in surviving_above + surviving_below:
            if not all(v in pos and pos[v] in comp
                       for v in emb.frontier_vertices(fid)):
                raise ValueError(
                    "constraint face outside the component of s and t")
        rot2 = []
        new_edge2 = {old: new for new, old in enumerate(ekeep2)}
        for v in vkeep2:
            rot2.append(tuple(2 * new_edge2[d >> 1] | (d & 1)
                              for d in rotation[v] if (d >> 1) in new_edge2))
        vmap = [vmap[v] for v in vkeep2]
        emap = [emap[e] for e in ekeep2]
        rotation = rot2
        g1 = g1b
        pos = {old: new for new, old in enumerate(vmap)}
        s1, t1 = pos[inst.s], pos[inst.t]

    # close the graph with a fresh s-t edge drawn over the top: it enters
    # the former outer region through the corners that the upper arc used
    # to occupy at s and t
    live_edge = {old: new for new, old in enumerate(emap)}

    def corner_insert(vertex_old, new_dart, after_dart):
        """Rotation at the vertex with new_dart in after_dart's old slot."""
        out = []
        placed = False
        for d in emb.rotation[vertex_old]:
            if d == after_dart:
                if (d >> 1) in live_edge:
                    out.append(2 * live_edge[d >> 1] | (d & 1))
                out.append(new_dart)
                placed = True
            elif (d >> 1) in live_edge:
                out.append(2 * live_edge[d >> 1] | (d & 1))
        if not placed:
            raise SolverError("outer corner dart missing from rotation")
        return tuple(out)
    st_edge = g1.m
    g2 = Multigraph(g1.n, list(g1.edges) + [(s1, t1)])
    dart_s, dart_t = 2 * st_edge, 2 * st_edge + 1
    # the outer orbit leaves s along the upper arc and t along the lower arc
    outer_orbit = emb.faces[emb.outer_face]
    d_up_s = outer_orbit[si]
    d_low_t = outer_orbit[ti]
    rot2 = [tuple(rotation[v]) for v in range(g1.n)]
    rot2[s1] = corner_insert(inst.s, dart_s, d_up_s)
    rot2[t1] = corner_insert(inst.t, dart_t, d_low_t)
    emb2 = PlaneEmbedding(g2, rot2)
    face_a = emb2.face_of_dart[dart_t]   # bounded by the upper side
    face_b = emb2.face_of_dart[dart_s]   # bounded by the lower side, outer
    if face_a == face_b:
        raise SolverError("closing edge failed to split the outer region")

    def surviving_face_id(fid):
        for d in emb.faces[fid]:
            e = d >> 1
            if e in live_edge:
                return emb2.face_of_dart[2 * live_edge[e] | (d & 1)]
        raise SolverError("surviving face lost all of its darts")

    side_s = {face_a} | {surviving_face_id(f) for f in surviving_above}
    side_t = {face_b} | {surviving_face_id(f) for f in surviving_below}
    if side_s & side_t:
        raise SolverError("a surviving face landed on both sides")
    dual_graph = dual(g2, emb2).dual
    sub = CutUncutInstance(dual_graph, frozenset(side_s), frozenset(side_t),
                           g2.m)
    ans = solve(sub, cfg)
    if ans is None:
        return None
    if st_edge not in ans.cut_edges:
        raise SolverError("separating cycle avoids the closing edge")
    path_edges = sorted(ans.cut_edges - {st_edge})
    adj = {}
    for e in path_edges:
        u, v = g2.edges[e]
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    verts, edges = [s1], []
    used = set()
    cur = s1
    while cur != t1:
        step = [(e, w) for e, w in adj.get(cur, ()) if e not in used]
        if len(step) != 1:
            raise SolverError("cut-cycle remainder is not an s-t path")
        e, cur = step[0]
        used.add(e)
        verts.append(cur)
        edges.append(e)
    if len(used) != len(path_edges) or len(set(verts)) != len(verts):
        raise SolverError("cut-cycle remainder is not an s-t path")
    return PathWitness(tuple(vmap[v] for v in verts),
                       tuple(emap[e] for e in edges))
