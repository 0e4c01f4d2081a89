"""Command-line front end: instance files in, one-line verdicts out.

Instance grammar (1-indexed vertex, edge, and face ids; `#` comments):

    p <kind> <n> <m>        kind: cutuncut | xcsp | diversion | glcsp
    e <u> <v>               exactly m edge lines; edge id = line order
    r <v> <eid>*            optional rotation, counterclockwise per vertex
    s <v>*   t <v>*         terminal sets (single vertices except cutuncut)
    g <eid> <bitstring>     edge label (xcsp); bit j of the string is
                            coordinate j
    c <bitstring>           target label sum (xcsp)
    x <v>*                  one visit-at-most-once vertex set per line
    b <eid>*                diversion edges
    fa <fid>*  fb <fid>*    faces to keep above / below (glcsp); ids follow
                            the embedding's face enumeration order
    k <int>                 budget

Output: `CUT <size>` / `PATH <len>` / `INFEASIBLE` on the first line,
witness lines after, `confidence: 1-2^-<reps>` appended to randomized
INFEASIBLE verdicts.  Exit status 0 = solved either way, 1 = usage
error, 2 = malformed instance or non-planar input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .applications import (DiversionInstance, FacePathInstance,
                           face_constrained_path, generalized_network_diversion,
                           network_diversion)
from .graphs import Multigraph
from .oracle import (brute_cut_uncut, brute_diversion, brute_xor_path)
from .planar import NonPlanarError, PlaneEmbedding, embed
from .solver import CutUncutInstance, solve
from .xorpath import SolverConfig, XorPathInstance, shortest_xor_path


class ParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


KINDS = ("cutuncut", "xcsp", "diversion", "glcsp")


@dataclass
class InstanceFile:
    kind: str
    n: int
    m: int
    edges: list
    rotation: dict | None = None
    set_s: list | None = None
    set_t: list | None = None
    labels: dict = field(default_factory=dict)
    target: str | None = None
    xsets: list = field(default_factory=list)
    b_edges: list | None = None
    faces_above: list | None = None
    faces_below: list | None = None
    budget: int | None = None


def parse_instance(text: str) -> InstanceFile:
    inst: InstanceFile | None = None
    edge_lines = 0
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag, args = parts[0], parts[1:]
        if tag == "p":
            if inst is not None:
                raise ParseError(ln, "duplicate problem line")
            if len(args) != 3 or args[0] not in KINDS:
                raise ParseError(ln, f"expected `p <kind> <n> <m>` with kind in {KINDS}")
            try:
                n, m = int(args[1]), int(args[2])
            except ValueError:
                raise ParseError(ln, "n and m must be integers")
            if n < 1 or m < 0:
                raise ParseError(ln, "need n >= 1 and m >= 0")
            inst = InstanceFile(args[0], n, m, [])
            continue
        if inst is None:
            raise ParseError(ln, "first non-comment line must be the `p` line")

        def ints(what=args):
            try:
                return [int(a) for a in what]
            except ValueError:
                raise ParseError(ln, "expected integers")

        def vertex(x):
            if not 1 <= x <= inst.n:
                raise ParseError(ln, f"vertex {x} outside 1..{inst.n}")
            return x - 1

        def edge_id(x):
            if not 1 <= x <= inst.m:
                raise ParseError(ln, f"edge {x} outside 1..{inst.m}")
            return x - 1

        if tag == "e":
            if len(args) != 2:
                raise ParseError(ln, "expected `e <u> <v>`")
            if edge_lines >= inst.m:
                raise ParseError(ln, f"more than {inst.m} edge lines")
            u, v = (vertex(x) for x in ints())
            inst.edges.append((u, v))
            edge_lines += 1
        elif tag == "r":
            vals = ints()
            if not vals:
                raise ParseError(ln, "expected `r <v> <eid>*`")
            v = vertex(vals[0])
            if inst.rotation is None:
                inst.rotation = {}
            if v in inst.rotation:
                raise ParseError(ln, f"duplicate rotation for vertex {vals[0]}")
            inst.rotation[v] = [edge_id(x) for x in vals[1:]]
        elif tag in ("s", "t"):
            attr = "set_s" if tag == "s" else "set_t"
            if getattr(inst, attr) is not None:
                raise ParseError(ln, f"duplicate `{tag}` line")
            setattr(inst, attr, [vertex(x) for x in ints()])
        elif tag == "g":
            if len(args) != 2:
                raise ParseError(ln, "expected `g <eid> <bitstring>`")
            e = edge_id(ints([args[0]])[0])
            if e in inst.labels:
                raise ParseError(ln, f"duplicate label for edge {args[0]}")
            if set(args[1]) - {"0", "1"}:
                raise ParseError(ln, "labels must be bitstrings")
            inst.labels[e] = args[1]
        elif tag == "c":
            if inst.target is not None:
                raise ParseError(ln, "duplicate `c` line")
            if len(args) != 1 or set(args[0]) - {"0", "1"}:
                raise ParseError(ln, "expected `c <bitstring>`")
            inst.target = args[0]
        elif tag == "x":
            inst.xsets.append([vertex(v) for v in ints()])
        elif tag == "b":
            if inst.b_edges is not None:
                raise ParseError(ln, "duplicate `b` line")
            inst.b_edges = [edge_id(x) for x in ints()]
        elif tag in ("fa", "fb"):
            attr = "faces_above" if tag == "fa" else "faces_below"
            if getattr(inst, attr) is not None:
                raise ParseError(ln, f"duplicate `{tag}` line")
            setattr(inst, attr, ints())
        elif tag == "k":
            if inst.budget is not None:
                raise ParseError(ln, "duplicate `k` line")
            inst.budget = ints()[0]
            if inst.budget < 0:
                raise ParseError(ln, "budget must be nonnegative")
        else:
            raise ParseError(ln, f"unknown line tag `{tag}`")
    if inst is None:
        raise ParseError(1, "missing `p` line")
    if edge_lines != inst.m:
        raise ParseError(1, f"expected {inst.m} edge lines, found {edge_lines}")
    return inst


def _bits_to_int(bits: str) -> int:
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def _build_embedding(inst: InstanceFile, g: Multigraph) -> PlaneEmbedding:
    if inst.rotation is None:
        return embed(g)
    if set(inst.rotation) != set(range(g.n)):
        raise ParseError(1, "rotation must list every vertex exactly once")
    rotation = []
    for v in range(g.n):
        seen: dict = {}
        darts = []
        for e in inst.rotation[v]:
            u, w = g.edges[e]
            if v not in (u, w):
                raise ParseError(1, f"edge {e + 1} not incident to vertex {v + 1}")
            if u == w:  # loop: first mention is one end, second the other
                d = 2 * e + seen.get(e, 0)
                seen[e] = seen.get(e, 0) + 1
            else:
                d = 2 * e if u == v else 2 * e + 1
            darts.append(d)
        rotation.append(darts)
    return PlaneEmbedding(g, rotation)


def _emit_cut(cut, out):
    out.write(f"CUT {cut.size}\n")
    out.write("edges: " + " ".join(str(e + 1) for e in sorted(cut.cut_edges)) + "\n")
    out.write("sideA: " + " ".join(str(v + 1) for v in sorted(cut.side_a)) + "\n")


def _emit_path(vertices, out):
    out.write(f"PATH {len(vertices) - 1}\n")
    out.write("vertices: " + " ".join(str(v + 1) for v in vertices) + "\n")


def _emit_infeasible(out, reps=None):
    out.write("INFEASIBLE\n")
    if reps is not None:
        out.write(f"confidence: 1-2^-{reps}\n")


def _require(cond, message):
    if not cond:
        raise ParseError(1, message)


def _solve_file(inst: InstanceFile, args, out) -> int:
    g = Multigraph(inst.n, inst.edges)
    cfg = SolverConfig(repetitions=args.reps, seed=args.seed)
    if inst.kind == "cutuncut":
        _require(inst.set_s and inst.set_t, "cutuncut needs `s` and `t` sets")
        _require(inst.budget is not None, "cutuncut needs a `k` line")
        emb = _build_embedding(inst, g)
        cu = CutUncutInstance(g, frozenset(inst.set_s), frozenset(inst.set_t),
                              inst.budget, emb)
        if args.oracle:
            cut = brute_cut_uncut(g, cu.side_s, cu.side_t)
            if cut is not None and cut.size > inst.budget:
                cut = None
            if cut is not None and not cu.side_s <= cut.side_a:
                from .graphs import Cut
                cut = Cut(cut.side_b, cut.side_a, cut.cut_edges)
            reps = None
        else:
            method = "facecover" if args.param == "facecover" else "terminals"
            cut = solve(cu, cfg, method=method, cover_size=args.cover_size)
            reps = cfg.repetitions
        if cut is None:
            _emit_infeasible(out, reps)
        else:
            _emit_cut(cut, out)
        return 0
    if inst.kind == "xcsp":
        _require(inst.set_s and len(inst.set_s) == 1, "xcsp needs a single `s` vertex")
        _require(inst.set_t and len(inst.set_t) == 1, "xcsp needs a single `t` vertex")
        dim = len(inst.target) if inst.target is not None else 0
        for e, bits in inst.labels.items():
            _require(len(bits) == dim, "label width must match the target width")
        labels = tuple(_bits_to_int(inst.labels.get(e, "0" * dim))
                       for e in range(g.m))
        target = _bits_to_int(inst.target) if inst.target else 0
        xp = XorPathInstance(g, inst.set_s[0], inst.set_t[0], dim, labels,
                             target, tuple(frozenset(x) for x in inst.xsets))
        if args.oracle:
            ans = brute_xor_path(xp)
            if ans is not None and inst.budget is not None and \
                    len(ans[1]) > inst.budget:
                ans = None
            if ans is None:
                _emit_infeasible(out)
            else:
                _emit_path(ans[0], out)
            return 0
        if inst.budget is not None:
            cfg = SolverConfig(cfg.repetitions, cfg.seed, inst.budget)
        witness = shortest_xor_path(xp, cfg)
        if witness is None:
            _emit_infeasible(out, cfg.repetitions)
        else:
            _emit_path(witness.vertices, out)
        return 0
    if inst.kind == "diversion":
        _require(inst.set_s and len(inst.set_s) == 1, "diversion needs a single `s`")
        _require(inst.set_t and len(inst.set_t) == 1, "diversion needs a single `t`")
        _require(inst.b_edges, "diversion needs a `b` line")
        _require(inst.budget is not None, "diversion needs a `k` line")
        emb = _build_embedding(inst, g)
        di = DiversionInstance(g, inst.set_s[0], inst.set_t[0],
                               frozenset(inst.b_edges), inst.budget, emb)
        if args.oracle:
            cut = brute_diversion(g, di.s, di.t, di.diversion_edges)
            if cut is not None and cut.size > inst.budget:
                cut = None
            if cut is not None and di.s not in cut.side_a:
                from .graphs import Cut
                cut = Cut(cut.side_b, cut.side_a, cut.cut_edges)
            reps = None
        else:
            solver = network_diversion if len(di.diversion_edges) == 1 \
                else generalized_network_diversion
            cut = solver(di, cfg)
            reps = cfg.repetitions
        if cut is None:
            _emit_infeasible(out, reps)
        else:
            _emit_cut(cut, out)
        return 0
    # glcsp
    _require(inst.set_s and len(inst.set_s) == 1, "glcsp needs a single `s`")
    _require(inst.set_t and len(inst.set_t) == 1, "glcsp needs a single `t`")
    _require(not args.oracle, "no oracle route for glcsp instances")
    emb = _build_embedding(inst, g)
    fa = inst.faces_above or []
    fb = inst.faces_below or []
    for f in fa + fb:
        _require(1 <= f <= emb.face_count, f"face {f} outside 1..{emb.face_count}")
    fp = FacePathInstance(g, emb, inst.set_s[0], inst.set_t[0],
                          frozenset(f - 1 for f in fa),
                          frozenset(f - 1 for f in fb))
    witness = face_constrained_path(fp, cfg)
    if witness is None:
        _emit_infeasible(out, cfg.repetitions)
    else:
        _emit_path(witness.vertices, out)
    return 0


def run(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = argparse.ArgumentParser(prog="cutuncut", add_help=True)
    sub = parser.add_subparsers(dest="command")
    sp = sub.add_parser("solve", help="solve an instance file")
    sp.add_argument("file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--reps", type=int, default=20)
    sp.add_argument("--param", choices=("terminals", "facecover"),
                    default="terminals")
    sp.add_argument("--cover-size", type=int, default=None)
    sp.add_argument("--oracle", action="store_true")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.command != "solve":
        parser.print_usage(err)
        return 1
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 1
    try:
        inst = parse_instance(text)
        return _solve_file(inst, args, out)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except NonPlanarError as exc:
        err.write(f"error: NonPlanar: {exc}\n")
        return 2
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
