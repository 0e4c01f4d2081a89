"""Randomized solver for shortest xor-constrained paths and cycles.

The problem: in a multigraph with edge labels from the group Z_2^d, find
a shortest s-t-path whose label xor equals a prescribed target and which
visits each of p given vertex sets at most once.  The solver associates
with every length a polynomial over GF(2^w) whose monomials are the
feasible *walks* of that length; walks that are not paths cancel in
characteristic 2, so the polynomial is nonzero exactly when a feasible
path of that length (and none shorter) exists.  Random evaluation
(Schwartz-Zippel) tests this with one-sided error: a reported length is
never below the true optimum, and a feasible instance is missed with
probability at most 2^-repetitions per length.

Cycles reduce to paths by anchoring on one edge of the cycle: a shortest
feasible cycle through edge e = (a, b) is e plus a shortest feasible
a-b-path in the graph without e.

All solver entry points are pure functions of (instance, config); there
is no shared mutable state, so independent solves can run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _dp
from .gf2 import Field, field_for_size, log_exp_tables
from .graphs import Multigraph, subdivide_to_simple


class SolverError(RuntimeError):
    """An internal invariant failed; never used to report infeasibility."""


@dataclass(frozen=True)
class XorPathInstance:
    """Graph, endpoints, labels in Z_2^dim, target, and once-only vertex sets."""

    graph: Multigraph
    s: int
    t: int
    dim: int
    labels: tuple
    target: int
    visit_once: tuple = ()

    def __post_init__(self):
        g = self.graph
        if not (0 <= self.s < g.n and 0 <= self.t < g.n):
            raise ValueError("endpoints outside vertex range")
        if len(self.labels) != g.m:
            raise ValueError("every edge needs a label")
        lim = 1 << self.dim
        if not 0 <= self.target < lim or any(not 0 <= l < lim for l in self.labels):
            raise ValueError("labels/target exceed the group dimension")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "visit_once",
                           tuple(frozenset(x) for x in self.visit_once))

    @property
    def p(self) -> int:
        return len(self.visit_once)


@dataclass(frozen=True)
class SolverConfig:
    repetitions: int = 20
    seed: int = 0
    max_length: int | None = None
    max_bits: int = 30


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)


def dp_state_count(n_vertices: int, dim: int, p: int, length: int) -> int:
    """Number of dynamic-programming states for one evaluation."""
    return (length + 1) * n_vertices * (1 << dim) * (1 << p)


# ---------------------------------------------------------------------------
# randomness: counter-based streams so every evaluation is reproducible
# ---------------------------------------------------------------------------

_PHASE_SEARCH = 1
_PHASE_RECOVER = 2


def _stream(seed: int, phase: int, ctx: int, rep: int) -> np.random.Generator:
    """Independent deterministic stream for one (phase, context, repetition).

    Streams come from the Philox counter-based generator keyed by the
    user seed, with the context packed into the counter block, so any
    single evaluation can be replayed in isolation.
    """
    counter = [phase & 0xFFFFFFFFFFFFFFFF, ctx & 0xFFFFFFFFFFFFFFFF,
               rep & 0xFFFFFFFFFFFFFFFF, 0]
    key = [seed & 0xFFFFFFFFFFFFFFFF, 0x9E3779B97F4A7C15]
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


# ---------------------------------------------------------------------------
# DP plumbing
# ---------------------------------------------------------------------------

class _Tables:
    """Field plus log/antilog tables, shared across evaluations of one solve."""

    def __init__(self, f: Field):
        self.field = f
        self.log, self.exp = log_exp_tables(f)


def _csr_arrays(g: Multigraph):
    total = sum(len(g.incident(u)) for u in range(g.n))
    adj_ptr = np.zeros(g.n + 1, dtype=np.int64)
    adj_v = np.zeros(max(total, 1), dtype=np.int64)
    adj_e = np.zeros(max(total, 1), dtype=np.int64)
    k = 0
    for u in range(g.n):
        for e, w in g.incident(u):
            adj_v[k] = w
            adj_e[k] = e
            k += 1
        adj_ptr[u + 1] = k
    return adj_ptr, adj_v, adj_e


def _tmask_array(n: int, visit_once) -> np.ndarray:
    tm = np.zeros(n, dtype=np.int64)
    for i, xs in enumerate(visit_once):
        for v in xs:
            tm[v] |= 1 << i
    return tm


def _polynomial_rows(g: Multigraph, s, t, dim, labels, target, visit_once,
                     lmax, logw, tables: _Tables):
    adj_ptr, adj_v, adj_e = _csr_arrays(g)
    lab = np.asarray(labels, dtype=np.int64) if g.m else np.zeros(1, dtype=np.int64)
    tm = _tmask_array(g.n, visit_once)
    return _dp.walk_polynomial_values(
        adj_ptr, adj_v, adj_e, lab, tm, s, t, target,
        1 << dim, 1 << len(visit_once), lmax, logw, tables.log, tables.exp)


def evaluate_polynomial(inst: XorPathInstance, length: int, assignment) -> int:
    """Value of the feasible-walk polynomial at one fixed assignment.

    The instance graph must be simple and s != t; `assignment` maps each
    edge id to a field element of GF(2^w) with w = ceil(log2 n) + 1.
    The result is 0 whenever no feasible path of length <= `length`
    exists (walk monomials cancel pairwise in characteristic 2).
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    if not inst.graph.is_simple():
        raise ValueError("evaluate_polynomial requires a simple graph")
    if inst.s == inst.t:
        raise ValueError("evaluate_polynomial requires s != t")
    tables = _Tables(field_for_size(inst.graph.n))
    q = tables.field.order
    vals = np.zeros((max(inst.graph.m, 1), 1), dtype=np.int64)
    for e in range(inst.graph.m):
        v = assignment[e]
        if not 0 <= v < q:
            raise ValueError(f"assignment value {v} outside GF({q})")
        vals[e, 0] = v
    logw = tables.log[vals]
    rows = _polynomial_rows(inst.graph, inst.s, inst.t, inst.dim, inst.labels,
                            inst.target, inst.visit_once, length, logw, tables)
    return int(rows[length, 0])


# ---------------------------------------------------------------------------
# path solver
# ---------------------------------------------------------------------------

def _check_budget(inst: XorPathInstance, cfg: SolverConfig):
    if inst.dim + inst.p > cfg.max_bits:
        raise ValueError(
            f"dim + p = {inst.dim + inst.p} exceeds the bit budget {cfg.max_bits}")


class _PreparedPath:
    """Loop-free instance plus its simple working copy for the DP.

    Multigraphs are handled by subdividing every edge once, which exactly
    doubles solution lengths, so only even DP rows are read and halved.
    """

    def __init__(self, inst: XorPathInstance, cfg: SolverConfig):
        _check_budget(inst, cfg)
        g0 = inst.graph
        loops = [e for e in range(g0.m) if g0.is_loop(e)]
        self.base, self.base_edges = g0.delete_edges(loops)
        self.base_labels = tuple(inst.labels[e] for e in self.base_edges)
        self.inst = inst
        self.cfg = cfg
        self.factor = 1 if self.base.is_simple() else 2
        self.simple_n = self.base.n + (self.base.m if self.factor == 2 else 0)
        self.tables = _Tables(field_for_size(max(self.simple_n, 2)))
        cap = g0.n - 1 if cfg.max_length is None else cfg.max_length
        self.cap = max(min(cap, g0.n - 1), 0)

    def rows_for(self, kept, logw, lmax):
        """Polynomial rows for the subgraph given by `kept` base-edge flags."""
        ids = [j for j in range(self.base.m) if kept[j]]
        sub = Multigraph(self.base.n, [self.base.edges[j] for j in ids])
        labels = [self.base_labels[j] for j in ids]
        if self.factor == 2:
            sd = subdivide_to_simple(sub)
            slabels = [0] * sd.simple.m
            for jj in range(len(ids)):
                slabels[sd.label_carrier[jj]] = labels[jj]
            lw = np.empty((max(sd.simple.m, 1), logw.shape[1]), dtype=np.int64)
            for jj, j in enumerate(ids):
                lw[2 * jj] = logw[j]
                lw[2 * jj + 1] = logw[self.base.m + j]
            g, labels = sd.simple, slabels
        else:
            g = sub
            sel = np.asarray(ids, dtype=np.int64)
            lw = logw[sel] if ids else logw[:1]
        return _polynomial_rows(g, self.inst.s, self.inst.t, self.inst.dim,
                                labels, self.inst.target, self.inst.visit_once,
                                lmax, lw, self.tables)

    def draw_logw(self, phase: int, ctx: int, reps: int) -> np.ndarray:
        """Random assignment columns; one independent stream per repetition.

        Row layout: one variable per base edge, plus (when subdividing)
        one extra variable per base edge for the label-free half.
        """
        q = self.tables.field.order
        nvars = self.base.m * (2 if self.factor == 2 else 1)
        vals = np.zeros((max(nvars, 1), reps), dtype=np.int64)
        for r in range(reps):
            rng = _stream(self.cfg.seed, phase, ctx, r)
            vals[:, r] = rng.integers(0, q, size=max(nvars, 1), dtype=np.int64)
        return self.tables.log[vals]


def _path_feasible(inst: XorPathInstance, vertices, edges) -> bool:
    g = inst.graph
    if len(vertices) != len(edges) + 1:
        return False
    if vertices[0] != inst.s or vertices[-1] != inst.t:
        return False
    if len(set(vertices)) != len(vertices):
        return False
    if len(set(edges)) != len(edges):
        return False
    acc = 0
    for i, e in enumerate(edges):
        u, v = g.edges[e]
        if {u, v} != {vertices[i], vertices[i + 1]}:
            return False
        acc ^= inst.labels[e]
    if acc != inst.target:
        return False
    vs = set(vertices)
    return all(len(vs & xs) <= 1 for xs in inst.visit_once)


def _empty_path_answer(inst: XorPathInstance):
    # a single vertex meets every once-only set at most once by itself
    return PathWitness((inst.s,), ()) if inst.target == 0 else None


def _search_length(prep: _PreparedPath, ctx: int) -> int | None:
    """Smallest internal DP row with a nonzero evaluation, or None."""
    if prep.cap < 1:
        return None
    lmax = min(prep.cap * prep.factor, max(prep.simple_n - 1, 1))
    logw = prep.draw_logw(_PHASE_SEARCH, ctx, prep.cfg.repetitions)
    rows = prep.rows_for([True] * prep.base.m, logw, lmax)
    for length in range(1, prep.cap + 1):
        row = length * prep.factor
        if row <= lmax and rows[row].any():
            return row
    return None


def _recover(prep: _PreparedPath, row: int, attempt: int):
    """Delete edges while a length-`row` solution survives; read off the path.

    Each deletion probe repeats ceil(log2 m) + repetitions times so the
    union bound over all probes keeps the total failure probability at
    2^-repetitions.
    """
    m = prep.base.m
    reps = (max(m, 2) - 1).bit_length() + prep.cfg.repetitions
    kept = [True] * m
    for e in range(m):
        kept[e] = False
        ctx = (attempt << 32) | (e + 1)
        logw = prep.draw_logw(_PHASE_RECOVER, ctx, reps)
        rows = prep.rows_for(kept, logw, row)
        if not rows[row].any():
            kept[e] = True
    return _extract_path(prep, kept)


def _extract_path(prep: _PreparedPath, kept):
    """Read the unique s-t path off the surviving edges, or None if malformed."""
    inst = prep.inst
    adj = {}
    for j, flag in enumerate(kept):
        if flag:
            u, v = prep.base.edges[j]
            adj.setdefault(u, []).append((j, v))
            adj.setdefault(v, []).append((j, u))
    vertices, edges = [inst.s], []
    used = set()
    cur = inst.s
    while cur != inst.t:
        nxt = [(j, w) for j, w in adj.get(cur, ()) if j not in used]
        if len(nxt) != 1 or len(edges) > prep.base.m:
            return None  # leftovers from an unlucky probe; caller retries
        j, cur = nxt[0]
        used.add(j)
        edges.append(prep.base_edges[j])
        vertices.append(cur)
    if len(used) != sum(kept):
        return None
    return PathWitness(tuple(vertices), tuple(edges))


def shortest_xor_path_length(inst: XorPathInstance,
                             cfg: SolverConfig = SolverConfig()) -> int | None:
    """Length of a shortest feasible path, or None when none is detected.

    One-sided: never returns a value below the true optimum; may miss a
    feasible instance with probability at most 2^-repetitions per
    candidate length.
    """
    if inst.s == inst.t:
        return None if _empty_path_answer(inst) is None else 0
    prep = _PreparedPath(inst, cfg)
    row = _search_length(prep, ctx=0)
    return None if row is None else row // prep.factor


def shortest_xor_path(inst: XorPathInstance,
                      cfg: SolverConfig = SolverConfig()) -> PathWitness | None:
    """A shortest feasible path with its witness, or None.

    The witness is recovered by testing which edges can be deleted while
    a solution of the detected length survives, until the graph is the
    path itself.  Every returned path is re-verified deterministically;
    persistent verification failure raises SolverError instead of ever
    returning an unverified witness.
    """
    if inst.s == inst.t:
        return _empty_path_answer(inst)
    prep = _PreparedPath(inst, cfg)
    row = None
    for attempt in range(3):
        row = _search_length(prep, ctx=attempt)
        if row is None:
            return None
        witness = _recover(prep, row, attempt)
        if witness is not None and \
                len(witness.edges) * prep.factor == row and \
                _path_feasible(inst, witness.vertices, witness.edges):
            return witness
    raise SolverError("witness recovery failed repeatedly")


# ---------------------------------------------------------------------------
# cycle solver
# ---------------------------------------------------------------------------

def _cycle_feasible(inst: XorPathInstance, vertices, edges) -> bool:
    g = inst.graph
    if len(edges) != len(vertices) or not edges:
        return False
    if len(set(vertices)) != len(vertices) or len(set(edges)) != len(edges):
        return False
    if len(edges) == 2 and vertices[0] == vertices[1]:
        return False
    acc = 0
    for i, e in enumerate(edges):
        u, v = g.edges[e]
        a, b = vertices[i], vertices[(i + 1) % len(vertices)]
        if {u, v} != {a, b}:
            return False
        acc ^= inst.labels[e]
    if acc != inst.target:
        return False
    vs = set(vertices)
    return all(len(vs & xs) <= 1 for xs in inst.visit_once)


def _anchor_candidates(g: Multigraph, labels, dim: int, target: int):
    """Edges of which every feasible cycle must contain at least one.

    A nonzero target forces an odd number of edges carrying any set
    target bit; anchoring on the sparsest such bit shrinks the guess
    space.  With target zero every edge is a candidate.
    """
    if target != 0:
        best = None
        for i in range(dim):
            if target >> i & 1:
                cand = [e for e in range(g.m) if labels[e] >> i & 1]
                if best is None or len(cand) < len(best):
                    best = cand
        return best
    return list(range(g.m))


def shortest_xor_cycle(inst: XorPathInstance,
                       cfg: SolverConfig = SolverConfig(),
                       max_length: int | None = None) -> CycleWitness | None:
    """A shortest feasible cycle, or None.

    A cycle of length 1 is a self-loop and of length 2 a pair of distinct
    parallel edges.  The search guesses the lowest-id anchor edge of a
    solution cycle and asks for a shortest feasible path between its
    endpoints in the remaining graph; soundness is inherited from the
    path solver and every returned cycle is re-verified deterministically.
    The s/t fields of the instance are ignored.
    """
    g0 = inst.graph
    cap = max(g0.n, 1) if max_length is None else min(max_length, max(g0.n, 1))
    for e in range(g0.m):
        if g0.is_loop(e) and inst.labels[e] == inst.target and cap >= 1:
            return CycleWitness((g0.edges[e][0],), (e,))
    loops = [e for e in range(g0.m) if g0.is_loop(e)]
    g, base_edges = g0.delete_edges(loops)
    labels = tuple(inst.labels[e] for e in base_edges)
    candidates = _anchor_candidates(g, labels, inst.dim, inst.target)
    best: CycleWitness | None = None
    for e0 in candidates:
        limit = (best.length if best else cap + 1) - 1
        if limit < 2:
            break
        # canonical form: e0 is the lowest-id candidate edge on the cycle
        dead = [e for e in candidates if e < e0] + [e0]
        sub, sub_edges = g.delete_edges(dead)
        a, b = g.edges[e0]
        sub_inst = XorPathInstance(
            sub, a, b, inst.dim, tuple(labels[e] for e in sub_edges),
            inst.target ^ labels[e0], inst.visit_once)
        cfg_sub = SolverConfig(cfg.repetitions, cfg.seed ^ (e0 + 1) * 0x9E3779B9,
                               limit - 1, cfg.max_bits)
        path = shortest_xor_path(sub_inst, cfg_sub)
        if path is None:
            continue
        edges = tuple(base_edges[sub_edges[j]] for j in path.edges) + \
            (base_edges[e0],)
        witness = CycleWitness(tuple(path.vertices), edges)
        if not _cycle_feasible(inst, witness.vertices, witness.edges):
            raise SolverError("recovered cycle fails deterministic verification")
        if best is None or witness.length < best.length:
            best = witness
    return best
