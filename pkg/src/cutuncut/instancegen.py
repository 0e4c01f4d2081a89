"""Deterministic random instance generators for tests and demos.

Planar graphs come from Delaunay triangulations of random point sets,
optionally thinned by random edge removal while keeping the graph
connected (or 2-connected).  Every generator is a pure function of its
seed.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import Multigraph, is_biconnected, is_connected
from .planar import PlaneEmbedding, embedding_from_coordinates


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, 0xD1B54A32D192ED03]))


def delaunay_graph(n: int, seed: int):
    """Connected planar triangulation on n random points; (graph, coords)."""
    from scipy.spatial import Delaunay

    rng = _rng(seed)
    for _ in range(50):
        pts = rng.random((n, 2))
        try:
            tri = Delaunay(pts)
        except Exception:
            continue
        edges = set()
        for simplex in tri.simplices:
            for i in range(3):
                a, b = int(simplex[i]), int(simplex[(i + 1) % 3])
                edges.add((min(a, b), max(a, b)))
        g = Multigraph(n, sorted(edges))
        if is_connected(g) and g.n == n:
            return g, [tuple(p) for p in pts]
    raise RuntimeError("could not generate a Delaunay graph")


def random_planar(n: int, seed: int, keep: float = 0.7,
                  biconnected: bool = False):
    """Random connected planar graph with coordinates.

    Thins a Delaunay triangulation, dropping each non-essential edge with
    probability 1-keep but never disconnecting (or, when `biconnected`,
    never leaving an articulation vertex).
    """
    g, coords = delaunay_graph(n, seed)
    rng = _rng(seed ^ 0x5DEECE66D)
    edges = list(g.edges)
    order = rng.permutation(len(edges))
    current = set(range(len(edges)))
    for idx in order:
        if rng.random() < keep:
            continue
        trial = current - {int(idx)}
        h = Multigraph(n, [edges[e] for e in sorted(trial)])
        if biconnected:
            ok = is_biconnected(h)
        else:
            ok = is_connected(h)
        if ok:
            current = trial
    return Multigraph(n, [edges[e] for e in sorted(current)]), coords


def random_planar_embedded(n: int, seed: int, keep: float = 0.7,
                           biconnected: bool = False):
    g, coords = random_planar(n, seed, keep, biconnected)
    return g, coords, embedding_from_coordinates(g, coords)


def random_terminals(g: Multigraph, seed: int, total_max: int = 5):
    """Disjoint nonempty terminal sets with |S| + |T| <= total_max."""
    rng = _rng(seed ^ 0xA5A5A5A5)
    total = int(rng.integers(2, min(total_max, g.n) + 1))
    ns = int(rng.integers(1, total))
    picks = rng.permutation(g.n)[:total]
    side_s = frozenset(int(v) for v in picks[:ns])
    side_t = frozenset(int(v) for v in picks[ns:])
    return side_s, side_t


def grid_graph(rows: int, cols: int):
    """Grid with unit coordinates; vertex r*cols+c sits at (c, r)."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    coords = [(c, r) for r in range(rows) for c in range(cols)]
    return Multigraph(rows * cols, edges), coords


def wheel_graph(k: int):
    """k-spoke wheel: rim 0..k-1 around hub k, hub at the origin."""
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(i, k) for i in range(k)]
    coords = [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
              for i in range(k)] + [(0.0, 0.0)]
    return Multigraph(k + 1, edges), coords


def glued_blocks(seed: int, pieces: int = 2, piece_n: int = 5):
    """Connected planar graph with planted cut vertices.

    Chains `pieces` random 2-connected blocks, identifying one vertex of
    each consecutive pair, so preprocessing has real work to do.
    """
    rng = _rng(seed ^ 0xC0FFEE)
    blocks = []
    for i in range(pieces):
        nb = int(rng.integers(4, piece_n + 1))
        blocks.append(random_planar(nb, seed * 31 + i, keep=0.8,
                                    biconnected=True)[0])
    offset = 0
    endpoints = []
    glue_old = None
    total = 0
    for g in blocks:
        mapping = {}
        for v in range(g.n):
            if v == 0 and glue_old is not None:
                mapping[v] = glue_old
            else:
                mapping[v] = offset
                offset += 1
        for u, v in g.edges:
            endpoints.append((mapping[u], mapping[v]))
        glue_old = mapping[int(rng.integers(0, g.n))]
        total = offset
    return Multigraph(total, endpoints)
