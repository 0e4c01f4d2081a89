"""Two-sets cut-uncut on planar graphs.

Given disjoint terminal sets S and T, find a minimum set of edges whose
removal leaves all of S in one connected component and all of T in
another.  For a connected graph the optimum is attained by a minimal cut
(both sides induce connected subgraphs), and minimal cuts of a plane
graph correspond exactly to simple cycles of its dual.  The solvers
below therefore look for a shortest cycle in the (possibly modified)
dual whose labels certify, via crossing parities against a fixed tree of
terminal-to-terminal paths, that S and T end up on opposite sides.

Two pipelines are provided: `solve_by_terminals` labels with all
terminals (group dimension |S|+|T|-1), and `solve_by_face_cover` labels
with representatives of at most r faces covering the terminals (group
dimension below 2r), splitting or trimming the dual vertices of covering
faces so that representative separation forces full separation.

Both inherit the one-sided error of the cycle solver: a returned cut is
always valid (deterministically re-verified), absence may be a false
negative with probability at most 2^-repetitions per candidate size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (Multigraph, Cut, cut_set, connected_components,
                     component_of, cut_vertices, spanning_tree_pruned,
                     tree_path)
from .planar import PlaneEmbedding, embed, dual, face_cover
from .xorpath import (XorPathInstance, SolverConfig, SolverError,
                      shortest_xor_cycle)


@dataclass(frozen=True)
class CutUncutInstance:
    graph: Multigraph
    side_s: frozenset
    side_t: frozenset
    budget: int
    embedding: PlaneEmbedding | None = None

    def __post_init__(self):
        s, t = frozenset(self.side_s), frozenset(self.side_t)
        if not s or not t:
            raise ValueError("terminal sets must be nonempty")
        if s & t:
            raise ValueError("terminal sets must be disjoint")
        if any(not 0 <= v < self.graph.n for v in s | t):
            raise ValueError("terminal outside vertex range")
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")
        object.__setattr__(self, "side_s", s)
        object.__setattr__(self, "side_t", t)


@dataclass(frozen=True)
class Resolved:
    """Preprocessing settled the instance: the optimal cut edges, or None."""

    cut_edges: frozenset | None


@dataclass(frozen=True)
class Reduced:
    """An equivalent 2-connected loop-free instance plus id maps to the input."""

    instance: CutUncutInstance
    vertex_map: tuple  # reduced vertex -> original vertex
    edge_map: tuple    # reduced edge -> original edge


def preprocess_biconnect(inst: CutUncutInstance,
                         cfg: SolverConfig = SolverConfig()):
    """Resolve or reduce an instance until its graph is 2-connected.

    Handles disconnected inputs, repeatedly eliminates cut vertices by
    deleting terminal-free or single-set separation sides (promoting the
    cut vertex into the deleted side's terminal set), detects separations
    that make the instance infeasible, and splits pure-S/pure-T
    separations into two single-terminal subinstances solved recursively.
    Also deletes self-loops up front; they never cross a cut.

    Returns Resolved (answer known; cut edges in original ids, ignoring
    the budget) or Reduced (2-connected instance with at least 3
    vertices plus id maps).
    """
    g0 = inst.graph
    loops = [e for e in range(g0.m) if g0.is_loop(e)]
    g, emap = g0.delete_edges(loops)
    vmap = list(range(g0.n))
    side_s, side_t = set(inst.side_s), set(inst.side_t)

    def shrink(keep_vertices):
        nonlocal g, emap, vmap, side_s, side_t
        sub, vkeep, ekeep = g.induced(keep_vertices)
        old_v = {v: i for i, v in enumerate(vkeep)}
        side_s = {old_v[v] for v in side_s if v in old_v}
        side_t = {old_v[v] for v in side_t if v in old_v}
        emap = [emap[e] for e in ekeep]
        vmap = [vmap[v] for v in vkeep]
        g = sub

    while True:
        comps = connected_components(g)
        if len(comps) > 1:
            comp_of = {}
            for i, comp in enumerate(comps):
                for v in comp:
                    comp_of[v] = i
            sc = {comp_of[v] for v in side_s}
            tc = {comp_of[v] for v in side_t}
            if len(sc) > 1 or len(tc) > 1:
                return Resolved(None)
            if sc != tc:
                return Resolved(frozenset())
            shrink(comps[next(iter(sc))])
            continue
        arts = cut_vertices(g)
        if not arts:
            break
        v = min(arts)
        rest, rest_v, _ = g.induced(set(range(g.n)) - {v})
        pieces = [{rest_v[x] for x in comp}
                  for comp in connected_components(rest)]
        empty = [c for c in pieces
                 if not c & side_s and not c & side_t]
        if empty:
            shrink(set(range(g.n)) - empty[0])
            continue
        scs = [c for c in pieces if c & side_s and not c & side_t]
        tcs = [c for c in pieces if c & side_t and not c & side_s]
        bcs = [c for c in pieces if c & side_s and c & side_t]
        vs, vt = v in side_s, v in side_t
        if len(bcs) >= 2:
            return Resolved(None)
        if len(bcs) == 1:
            if scs:
                if vt:
                    return Resolved(None)
                side_s = (side_s - scs[0]) | {v}
                shrink(set(range(g.n)) - scs[0])
                continue
            if tcs:
                if vs:
                    return Resolved(None)
                side_t = (side_t - tcs[0]) | {v}
                shrink(set(range(g.n)) - tcs[0])
                continue
            raise SolverError("articulation vertex with a single piece")
        # no piece holds both sets
        if len(scs) >= 2:
            if vt:
                return Resolved(None)
            side_s = (side_s - scs[0]) | {v}
            shrink(set(range(g.n)) - scs[0])
            continue
        if len(tcs) >= 2:
            if vs:
                return Resolved(None)
            side_t = (side_t - tcs[0]) | {v}
            shrink(set(range(g.n)) - tcs[0])
            continue
        if len(scs) != 1 or len(tcs) != 1:
            raise SolverError("unclassified separation at a cut vertex")
        if vs:
            side_s = (side_s - scs[0]) | {v}
            shrink(set(range(g.n)) - scs[0])
            continue
        if vt:
            side_t = (side_t - tcs[0]) | {v}
            shrink(set(range(g.n)) - tcs[0])
            continue
        # pure-S piece and pure-T piece around a free cut vertex: the cut
        # lives entirely on one side, with v standing in for the other
        best = None
        for piece, ss, tt in ((scs[0], side_s, {v}), (tcs[0], {v}, side_t)):
            sub, sub_v, sub_e = g.induced(piece | {v})
            idx = {x: i for i, x in enumerate(sub_v)}
            sub_inst = CutUncutInstance(
                sub, frozenset(idx[x] for x in ss if x in idx),
                frozenset(idx[x] for x in tt if x in idx), inst.budget)
            ans = solve(sub_inst, cfg)
            if ans is not None:
                mapped = frozenset(emap[sub_e[e]] for e in ans.cut_edges)
                if best is None or len(mapped) < len(best):
                    best = mapped
        return Resolved(best)

    if g.n == 2:
        # both terminals remain, one per vertex; the only cut takes all edges
        return Resolved(frozenset(emap))
    untouched = vmap == list(range(g0.n)) and emap == list(range(g0.m))
    reduced = CutUncutInstance(g, frozenset(side_s), frozenset(side_t),
                               inst.budget,
                               inst.embedding if untouched else None)
    return Reduced(reduced, tuple(vmap), tuple(emap))


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Labeling:
    """Edge labels whose cycle sums encode which side each representative ends on.

    Bit i of an edge label says whether the edge lies on the fixed tree
    path from the root to representative i; a dual cycle's label sum then
    has bit i exactly when it separates representative i from the root.
    The target has bit i when representative i belongs to T.
    """

    representatives: tuple
    root: int
    dim: int
    edge_labels: tuple
    target: int


def build_labels(g: Multigraph, reps, side_s, side_t) -> Labeling:
    reps = frozenset(reps)
    rs = reps & frozenset(side_s)
    if not rs:
        raise ValueError("need at least one representative in S")
    root = min(rs)
    others = sorted(reps - {root})
    tree = spanning_tree_pruned(g, reps)
    labels = [0] * g.m
    target = 0
    for i, v in enumerate(others):
        for e in tree_path(tree, g, root, v):
            labels[e] |= 1 << i
        if v in side_t:
            target |= 1 << i
    return Labeling(tuple(sorted(reps)), root, len(others),
                    tuple(labels), target)


# ---------------------------------------------------------------------------
# dual-cycle to cut
# ---------------------------------------------------------------------------

def cycle_to_cut(g: Multigraph, cycle_primal_edges) -> Cut:
    """Bipartition induced by removing the primal image of a dual cycle.

    Raises SolverError when the image is not the cut-set of a minimal
    cut; that means an upstream bug, never bad input randomness.
    """
    edges = frozenset(cycle_primal_edges)
    adj = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if e not in edges:
            adj[u].append(v)
            adj[v].append(u)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    if len(comps) != 2:
        raise SolverError(
            f"dual cycle image yields {len(comps)} components, expected 2")
    a, b = frozenset(comps[0]), frozenset(comps[1])
    if cut_set(g, a) != edges:
        raise SolverError("dual cycle image is not the cut-set of its bipartition")
    return Cut(a, b, edges)


def _oriented(cut: Cut, side_s, side_t) -> Cut:
    if side_s <= cut.side_a and side_t <= cut.side_b:
        return cut
    if side_s <= cut.side_b and side_t <= cut.side_a:
        return Cut(cut.side_b, cut.side_a, cut.cut_edges)
    raise SolverError("cut does not separate the terminal sets")


# ---------------------------------------------------------------------------
# pipeline 1: all terminals as representatives
# ---------------------------------------------------------------------------

def solve_by_terminals(inst: CutUncutInstance,
                       cfg: SolverConfig = SolverConfig()) -> Cut | None:
    """Minimum cut within budget for a 2-connected loop-free instance.

    Labels the dual with all of S u T as representatives (group
    dimension |S|+|T|-1) and finds a shortest admissible dual cycle.
    """
    g = inst.graph
    emb = inst.embedding if inst.embedding is not None else embed(g)
    dg = dual(g, emb)
    lab = build_labels(g, inst.side_s | inst.side_t, inst.side_s, inst.side_t)
    xinst = XorPathInstance(dg.dual, 0, 0, lab.dim, lab.edge_labels, lab.target)
    cyc = shortest_xor_cycle(xinst, cfg,
                             max_length=min(inst.budget, dg.dual.n))
    if cyc is None:
        return None
    cut = cycle_to_cut(g, cyc.edges)
    return _oriented(cut, inst.side_s, inst.side_t)


# ---------------------------------------------------------------------------
# pipeline 2: representatives per covering face
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModifiedDual:
    """Dual graph after trimming and splitting the cover faces' vertices."""

    graph: Multigraph
    origin_edge: tuple   # modified-dual edge -> primal edge id
    visit_once: tuple    # one vertex set per single-side cover face
    split_origin: dict   # split vertex -> (face id, arc index)
    face_vertex: dict    # unsplit face id -> vertex id


def _frontier_blocks(verts, edges, side_s, side_t):
    """Arc structure of terminals along one face frontier cycle.

    Returns (s_positions, t_positions, all_positions) where positions
    index into the cyclic vertex list.
    """
    spos = [i for i, v in enumerate(verts) if v in side_s]
    tpos = [i for i, v in enumerate(verts) if v in side_t]
    return spos, tpos, sorted(spos + tpos)


def _arc_edges(edges, i, j):
    """Frontier edges from position i forward to position j (cyclic)."""
    n = len(edges)
    out = []
    k = i
    while k != j:
        out.append(edges[k])
        k = (k + 1) % n
    return out


def modify_dual_for_cover(g: Multigraph, emb: PlaneEmbedding, dg,
                          cover, side_s, side_t) -> ModifiedDual | None:
    """Apply the cover-face modifications to the dual; None when infeasible.

    Faces with terminals of both sets must be crossed so that one
    frontier arc keeps S and the other keeps T: the dual edges of the two
    minimal arcs around the terminal blocks are deleted, and interleaved
    blocks certify infeasibility.  Faces with terminals of one set are
    split into one vertex per arc between consecutive terminals, plus a
    visit-at-most-once set tying the pieces together.
    """
    deleted: set = set()
    # (face, primal edge) -> arc index, for split faces
    arc_of: dict = {}
    split_faces: dict = {}
    xsets_faces: list = []
    for fid in sorted(cover.faces):
        verts, edges = emb.frontier_cycle(fid)
        spos, tpos, allpos = _frontier_blocks(verts, edges, side_s, side_t)
        if not allpos:
            continue
        if spos and tpos:
            # need one S-arc and one T-arc; count side changes around the cycle
            seq = [(p, p in set(spos)) for p in allpos]
            changes = sum(seq[i][1] != seq[i - 1][1] for i in range(len(seq)))
            if changes != 2:
                return None  # terminals interleave; no cycle can separate them
            for pos in (spos, tpos):
                run_start = next(i for i in range(len(allpos))
                                 if allpos[i] in pos and
                                 allpos[i - 1] not in pos)
                first = allpos[run_start]
                last = first
                k = run_start
                while allpos[(k + 1) % len(allpos)] in pos and \
                        allpos[(k + 1) % len(allpos)] != first:
                    k = (k + 1) % len(allpos)
                    last = allpos[k]
                deleted.update(_arc_edges(edges, first, last))
        else:
            pos = spos or tpos
            q = len(pos)
            if q >= 2:
                split_faces[fid] = q
                for j in range(q):
                    for e in _arc_edges(edges, pos[j], pos[(j + 1) % q]):
                        arc_of[(fid, e)] = j
            xsets_faces.append((fid, q))
    # assemble the modified dual
    dualg = dg.dual
    vid: dict = {}
    nxt = 0
    for fid in range(emb.face_count):
        if fid not in split_faces:
            vid[fid] = nxt
            nxt += 1
    split_origin: dict = {}
    split_vid: dict = {}
    for fid, q in sorted(split_faces.items()):
        for j in range(q):
            split_vid[(fid, j)] = nxt
            split_origin[nxt] = (fid, j)
            nxt += 1

    def endpoint(fid, e):
        if fid in split_faces:
            return split_vid[(fid, arc_of[(fid, e)])]
        return vid[fid]

    endpoints, origin = [], []
    for e in range(g.m):
        if e in deleted:
            continue
        fa, fb = dualg.edges[e]
        if fa == fb:
            raise SolverError("bridge in a supposedly 2-connected graph")
        endpoints.append((endpoint(fa, e), endpoint(fb, e)))
        origin.append(e)
    h = Multigraph(nxt, endpoints)
    xsets = []
    for fid, q in xsets_faces:
        if q == 1:
            xsets.append(frozenset({vid[fid]}))
        else:
            xsets.append(frozenset(split_vid[(fid, j)] for j in range(q)))
    return ModifiedDual(h, tuple(origin), tuple(xsets), split_origin,
                        {f: i for f, i in vid.items()})


def _pick_representatives(emb: PlaneEmbedding, cover, side_s, side_t):
    reps = set()
    for fid in sorted(cover.faces):
        front = emb.frontier_vertices(fid)
        s_here = sorted(front & side_s)
        t_here = sorted(front & side_t)
        if s_here and t_here:
            reps.add(s_here[0])
            reps.add(t_here[0])
        elif s_here:
            reps.add(s_here[0])
        elif t_here:
            reps.add(t_here[0])
    return reps


def solve_by_face_cover(inst: CutUncutInstance, r: int,
                        cfg: SolverConfig = SolverConfig()) -> Cut | None:
    """Minimum cut within budget, parameterized by a face cover of size r.

    Returns None when the terminals admit no cover by r faces, when the
    cover certifies infeasibility, or when no admissible cycle within
    budget is detected.
    """
    g = inst.graph
    emb = inst.embedding if inst.embedding is not None else embed(g)
    terms = inst.side_s | inst.side_t
    cover = face_cover(g, emb, terms, r)
    if cover is None:
        return None
    dg = dual(g, emb)
    mod = modify_dual_for_cover(g, emb, dg, cover, inst.side_s, inst.side_t)
    if mod is None:
        return None
    reps = _pick_representatives(emb, cover, inst.side_s, inst.side_t)
    lab = build_labels(g, reps, inst.side_s, inst.side_t)
    hlabels = tuple(lab.edge_labels[mod.origin_edge[h]]
                    for h in range(mod.graph.m))
    xinst = XorPathInstance(mod.graph, 0, 0, lab.dim, hlabels, lab.target,
                            mod.visit_once)
    cyc = shortest_xor_cycle(xinst, cfg,
                             max_length=min(inst.budget, mod.graph.n))
    if cyc is None:
        return None
    primal = frozenset(mod.origin_edge[h] for h in cyc.edges)
    if len(primal) != len(cyc.edges):
        raise SolverError("modified-dual cycle reuses a primal edge")
    cut = cycle_to_cut(g, primal)
    return _oriented(cut, inst.side_s, inst.side_t)


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------

def _finish(g: Multigraph, side_s, side_t, budget, cut_edges) -> Cut | None:
    """Rebuild and verify the bipartition of the original graph."""
    if cut_edges is None or len(cut_edges) > budget:
        return None
    adj = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if e not in cut_edges:
            adj[u].append(v)
            adj[v].append(u)
    comp = [-1] * g.n
    comps = 0
    for s in range(g.n):
        if comp[s] != -1:
            continue
        stack = [s]
        comp[s] = comps
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w] = comps
                    stack.append(w)
        comps += 1
    if len({comp[v] for v in side_s}) != 1 or len({comp[v] for v in side_t}) != 1:
        raise SolverError("resolved cut fails to keep a terminal set together")
    ca = comp[next(iter(side_s))]
    if comp[next(iter(side_t))] == ca:
        raise SolverError("resolved cut fails to separate the terminal sets")
    a = frozenset(v for v in range(g.n) if comp[v] == ca)
    b = frozenset(range(g.n)) - a
    if cut_set(g, a) != frozenset(cut_edges):
        raise SolverError("resolved cut edges do not match their bipartition")
    return Cut(a, b, frozenset(cut_edges))


def solve(inst: CutUncutInstance, cfg: SolverConfig = SolverConfig(),
          method: str = "terminals", cover_size: int | None = None) -> Cut | None:
    """Full pipeline: preprocess, solve, translate back, verify.

    `method` picks the parameterization: "terminals" or "facecover"
    (with `cover_size` bounding the face cover; defaults to the number
    of terminals, which always suffices).
    """
    pre = preprocess_biconnect(inst, cfg)
    if isinstance(pre, Resolved):
        return _finish(inst.graph, inst.side_s, inst.side_t, inst.budget,
                       pre.cut_edges)
    sub = pre.instance
    if method == "terminals":
        cut = solve_by_terminals(sub, cfg)
    elif method == "facecover":
        r = cover_size if cover_size is not None else \
            len(sub.side_s | sub.side_t)
        cut = solve_by_face_cover(sub, r, cfg)
    else:
        raise ValueError(f"unknown method {method!r}")
    if cut is None:
        return None
    original_edges = frozenset(pre.edge_map[e] for e in cut.cut_edges)
    return _finish(inst.graph, inst.side_s, inst.side_t, inst.budget,
                   original_edges)
