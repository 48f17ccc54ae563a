"""Tropical spectral curve of the UD-pToda: period data, the compact metric
graph Gamma read off the corner locus of F, and the tropical Abel-Jacobi map.

Edge layout (ids):
    0..g        vertical edges v_k at X = lambda_k, oriented upward
    g+1..2g     bottom chain b_k from X = lambda_{k-1} to lambda_k, rightward
    2g+1..3g    top chain t_k, same X range, rightward
Vertex ids: bottom_k = k, top_k = g+1+k.

B_i runs up v_i, left along t_i, down v_{i-1}, right along b_i.
"""

from __future__ import annotations

import csv
import heapq
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidChain, NotGeneric, NotOnCurve
from .rational import (Mat, Vec, dot, fmt, fmt_vec, inverse, is_integral, ones,
                       row_times, unit, vadd, vec, vscale, vsub, gbar)
from .udtoda import SpectralInvariants, is_generic, tropical_poly_F


@dataclass(frozen=True)
class CurveData:
    g: int
    inv: SpectralInvariants
    L: Fraction
    lam: Vec            # lambda_0 .. lambda_g
    p: Vec              # p_1 .. p_g
    lambda_vec: Vec     # (lambda_1 - lambda_0, ..., lambda_g - lambda_{g-1})
    K: Mat

    def p_(self, i: int) -> Fraction:
        """p_i with the convention p_0 = L."""
        return self.L if i == 0 else self.p[i - 1]

    @property
    def C(self) -> Vec:
        return self.inv.C

    def to_json(self) -> dict:
        return {"g": self.g, "C": fmt_vec(self.C), "L": fmt(self.L),
                "lambda": fmt_vec(self.lam), "p": fmt_vec(self.p),
                "lambda_vec": fmt_vec(self.lambda_vec),
                "K": [fmt_vec(r) for r in self.K]}


def curve_data(inv: SpectralInvariants) -> CurveData:
    if not is_generic(inv):
        raise NotGeneric(f"C = {[str(c) for c in inv.C]} violates the generic condition")
    g, c = inv.g, inv.c
    L = c(-1) - 2 * (g + 1) * c(g)
    lam = (c(g),) + tuple(c(g - i) - c(g - i + 1) for i in range(1, g + 1))
    p = tuple(L - 2 * sum(min(lam[i] - lam[0], lam[j] - lam[0]) for j in range(1, g + 1))
              for i in range(1, g + 1))
    lvec = tuple(lam[i] - lam[i - 1] for i in range(1, g + 1))
    pp = (L,) + p
    K = [[Fraction(0)] * g for _ in range(g)]
    for i in range(1, g + 1):
        K[i - 1][i - 1] = pp[i - 1] + pp[i] + 2 * (lam[i] - lam[i - 1])
        if i < g:
            K[i - 1][i] = K[i][i - 1] = -pp[i]
    cd = CurveData(g, inv, L, lam, p, lvec, tuple(tuple(r) for r in K))
    _check_curve_data(cd)
    return cd


def _check_curve_data(cd: CurveData) -> None:
    g, lam, p, L, K = cd.g, cd.lam, cd.p, cd.L, cd.K
    assert all(lam[i] < lam[i + 1] for i in range(g))
    assert p[-1] > 0 and all(p[i] > p[i + 1] for i in range(g - 1))
    assert 2 * sum(x - lam[0] for x in lam[1:]) < L
    assert dot(gbar(g), cd.lambda_vec) == cd.inv.c(0) - (g + 1) * cd.inv.c(g)
    # I K = p_g e_g + L e_1 + 2 lambda_vec;  gbar K = (g+1) L e_1;  row sums > 0
    rhs = vadd(vadd(vscale(p[-1], unit(g, g)), vscale(L, unit(g, 1))),
               vscale(2, cd.lambda_vec))
    assert row_times(ones(g), K) == rhs
    assert row_times(gbar(g), K) == vscale((g + 1) * L, unit(g, 1))
    assert all(sum(r) > 0 for r in K)


# ---------------------------------------------------------------- graph


@dataclass(frozen=True)
class Vertex:
    id: int
    name: str
    X: Fraction
    Y: Fraction


@dataclass(frozen=True)
class Edge:
    id: int
    name: str
    tail: int
    head: int
    length: Fraction
    direction: tuple[int, int]   # primitive tangent, tail -> head


@dataclass(frozen=True)
class Segment:
    """Piece of an edge between two offsets (lattice length from the tail).

    start > end means the edge is traversed against its orientation.
    """
    edge: int
    start: Fraction
    end: Fraction

    @property
    def sign(self) -> int:
        return (self.end > self.start) - (self.end < self.start)


Chain = tuple[Segment, ...]


@dataclass(frozen=True)
class PointOnCurve:
    edge: int
    offset: Fraction
    X: Fraction | None = None
    Y: Fraction | None = None


@dataclass(frozen=True)
class MetricGraph:
    cd: CurveData
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    cycles: tuple[Chain, ...]
    rays: tuple[tuple[int, tuple[int, int]], ...] = field(default=())

    @property
    def g(self) -> int:
        return self.cd.g

    def edge_by_name(self, name: str) -> Edge:
        return next(e for e in self.edges if e.name == name)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v.id, "name": v.name, "X": fmt(v.X), "Y": fmt(v.Y)}
                         for v in self.vertices],
            "edges": [{"id": e.id, "name": e.name, "tail": e.tail, "head": e.head,
                       "length": fmt(e.length), "direction": list(e.direction)}
                      for e in self.edges],
            "cycles": [[{"edge": s.edge, "sign": s.sign} for s in cyc] for cyc in self.cycles],
        }

    def corner_locus_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["edge", "name", "X0", "Y0", "X1", "Y1", "length"])
        for e in self.edges:
            a, b = self.vertices[e.tail], self.vertices[e.head]
            w.writerow([e.id, e.name, fmt(a.X), fmt(a.Y), fmt(b.X), fmt(b.Y), fmt(e.length)])
        return buf.getvalue()


def _lower_envelope(lines: Sequence[tuple[int, Fraction]]):
    """Breakpoints of X -> min_k (slope_k X + icept_k), scanning X left to right.

    Returns the lines that appear, in order, and the X of each switch.
    """
    # steepest slope wins at X -> -infinity
    order = sorted(lines, key=lambda t: (-t[0], t[1]))
    hull: list[tuple[int, Fraction]] = []
    xs: list[Fraction] = []
    for s, b in order:
        if hull and hull[-1][0] == s:
            continue
        while hull:
            s0, b0 = hull[-1]
            x = Fraction(b - b0, s0 - s)
            if xs and x <= xs[-1]:
                hull.pop()
                xs.pop()
                continue
            break
        if hull:
            s0, b0 = hull[-1]
            xs.append(Fraction(b - b0, s0 - s))
        hull.append((s, b))
    return hull, xs


def _primitive(dx: Fraction, dy: Fraction) -> tuple[int, int]:
    den = math.lcm(Fraction(dx).denominator, Fraction(dy).denominator)
    a, b = int(dx * den), int(dy * den)
    gg = math.gcd(a, b)
    return a // gg, b // gg


def _lattice_length(dx: Fraction, dy: Fraction) -> Fraction:
    px, py = _primitive(dx, dy)
    return abs(Fraction(dx) / px) if px else abs(Fraction(dy) / py)


@lru_cache(maxsize=128)
def build_graph(cd: CurveData) -> MetricGraph:
    g, inv = cd.g, cd.inv
    Cm1 = inv.c(-1)
    lines = [(k, inv.c(k)) for k in range(g + 1)] + [(g + 1, Fraction(0))]
    hull, xs = _lower_envelope(lines)
    if len(hull) != g + 2:
        raise NotGeneric("corner locus is degenerate: some term of F never dominates")

    def phi(x):
        return min(s * x + b for s, b in lines)

    verts = []
    for k, x in enumerate(xs):
        verts.append(Vertex(k, f"bottom{k}", x, phi(x)))
    for k, x in enumerate(xs):
        verts.append(Vertex(g + 1 + k, f"top{k}", x, Cm1 - phi(x)))
    for v in verts:
        if tropical_poly_F(inv, v.X, v.Y)[1] < 3:
            raise NotGeneric(f"vertex {v.name} is not trivalent")

    edges = []

    def add(name, tail, head):
        a, b = verts[tail], verts[head]
        dx, dy = b.X - a.X, b.Y - a.Y
        if dx == 0 and dy == 0:
            raise NotGeneric(f"edge {name} has zero length")
        mid = (a.X + dx / 2, a.Y + dy / 2)
        if tropical_poly_F(inv, *mid)[1] != 2:
            raise NotGeneric(f"edge {name} is not a simple corner of F")
        edges.append(Edge(len(edges), name, tail, head, _lattice_length(dx, dy),
                          _primitive(dx, dy)))

    for k in range(g + 1):
        add(f"v{k}", k, g + 1 + k)
    for k in range(1, g + 1):
        add(f"b{k}", k - 1, k)
    for k in range(1, g + 1):
        add(f"t{k}", g + 1 + k - 1, g + 1 + k)

    # unbounded rays: continuation of the extreme envelope pieces
    s_left = hull[0][0]
    rays = ((0, (-1, -s_left)), (g + 1, (-1, s_left)), (g, (1, 0)), (2 * g + 1, (1, 0)))
    _check_smooth(verts, edges, rays)

    cycles = []
    for i in range(1, g + 1):
        vi, vim, bi, ti = edges[i], edges[i - 1], edges[g + i], edges[2 * g + i]
        cycles.append((Segment(vi.id, Fraction(0), vi.length),
                       Segment(ti.id, ti.length, Fraction(0)),
                       Segment(vim.id, vim.length, Fraction(0)),
                       Segment(bi.id, Fraction(0), bi.length)))
    G = MetricGraph(cd, tuple(verts), tuple(edges), tuple(cycles), rays)

    lengths = sorted(e.length for e in edges)
    expected = sorted([cd.L, *cd.p, *cd.lambda_vec, *cd.lambda_vec])
    assert lengths == expected, (lengths, expected)
    assert pairing_matrix(G, G.cycles) == cd.K
    return G


def _check_smooth(verts, edges, rays) -> None:
    out: dict[int, list[tuple[int, int]]] = {v.id: [] for v in verts}
    for e in edges:
        out[e.tail].append(e.direction)
        out[e.head].append((-e.direction[0], -e.direction[1]))
    for vid, d in rays:
        out[vid].append(d)
    for vid, dirs in out.items():
        if len(dirs) != 3 or tuple(map(sum, zip(*dirs))) != (0, 0):
            raise NotGeneric(f"vertex {vid} is not balanced and trivalent")
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = dirs[i], dirs[j]
                if abs(a[0] * b[1] - a[1] * b[0]) != 1:
                    raise NotGeneric(f"vertex {vid} is not smooth")


# ---------------------------------------------------------------- chains


def _validate(G: MetricGraph, chain: Iterable[Segment]) -> Chain:
    chain = tuple(chain)
    for s in chain:
        if not isinstance(s, Segment) or not 0 <= s.edge < len(G.edges):
            raise InvalidChain(f"bad segment {s!r}")
        n = G.edges[s.edge].length
        if not (0 <= s.start <= n and 0 <= s.end <= n):
            raise InvalidChain(f"segment {s!r} leaves its edge (length {n})")
    return chain


def pairing(G: MetricGraph, a: Iterable[Segment], b: Iterable[Segment]) -> Fraction:
    """Bilinear extension of signed shared length."""
    a, b = _validate(G, a), _validate(G, b)
    total = Fraction(0)
    for s in a:
        lo_s, hi_s = sorted((s.start, s.end))
        for t in b:
            if t.edge != s.edge:
                continue
            lo_t, hi_t = sorted((t.start, t.end))
            overlap = min(hi_s, hi_t) - max(lo_s, lo_t)
            if overlap > 0:
                total += s.sign * t.sign * overlap
    return total


def pairing_matrix(G: MetricGraph, cycles: Sequence[Chain]) -> Mat:
    return tuple(tuple(pairing(G, a, b) for b in cycles) for a in cycles)


def chain_length(chain: Iterable[Segment]) -> Fraction:
    return sum((abs(s.end - s.start) for s in chain), Fraction(0))


# ---------------------------------------------------------------- points


def embed(G: MetricGraph, P: PointOnCurve) -> tuple[Fraction, Fraction]:
    e = G.edges[P.edge]
    a, b = G.vertices[e.tail], G.vertices[e.head]
    t = P.offset / e.length
    return a.X + t * (b.X - a.X), a.Y + t * (b.Y - a.Y)


def point(G: MetricGraph, edge: int | str, offset) -> PointOnCurve:
    e = G.edge_by_name(edge) if isinstance(edge, str) else G.edges[edge]
    off = Fraction(offset)
    if not 0 <= off <= e.length:
        raise NotOnCurve(f"offset {off} outside edge {e.name} of length {e.length}")
    X, Y = embed(G, PointOnCurve(e.id, off))
    return PointOnCurve(e.id, off, X, Y)


def locate(cd: CurveData, X, Y) -> PointOnCurve:
    """Resolve plane coordinates to (edge, offset); vertices resolve to the
    lowest-numbered incident edge."""
    G = build_graph(cd)
    X, Y = Fraction(X), Fraction(Y)
    for e in G.edges:
        a, b = G.vertices[e.tail], G.vertices[e.head]
        dx, dy = b.X - a.X, b.Y - a.Y
        rx, ry = X - a.X, Y - a.Y
        if dx * ry - dy * rx != 0:
            continue
        t = (rx / dx) if dx else (ry / dy)
        if 0 <= t <= 1:
            return PointOnCurve(e.id, t * e.length, X, Y)
    raise NotOnCurve(f"({X}, {Y}) is not on the compact part of the curve")


def vertex_point(G: MetricGraph, vid: int) -> PointOnCurve:
    v = G.vertices[vid]
    return locate(G.cd, v.X, v.Y)


def _position(G: MetricGraph, edge: int, off: Fraction):
    e = G.edges[edge]
    if off == 0:
        return ("v", e.tail)
    if off == e.length:
        return ("v", e.head)
    return ("e", edge, off)


def shortest_chain(G: MetricGraph, a: PointOnCurve, b: PointOnCurve) -> Chain:
    """Shortest path from a to b; ties broken lexicographically on edge ids."""
    start, goal = _position(G, a.edge, a.offset), _position(G, b.edge, b.offset)
    if start == goal:
        return ()
    cuts: dict[int, set[Fraction]] = {e.id: {Fraction(0), e.length} for e in G.edges}
    for P in (a, b):
        cuts[P.edge].add(P.offset)
    adj: dict = {}
    for eid, offs in cuts.items():
        offs = sorted(offs)
        for lo, hi in zip(offs, offs[1:]):
            u, v = _position(G, eid, lo), _position(G, eid, hi)
            adj.setdefault(u, []).append((v, Segment(eid, lo, hi)))
            adj.setdefault(v, []).append((u, Segment(eid, hi, lo)))
    heap = [(Fraction(0), (), start, ())]
    done = set()
    while heap:
        dist, key, node, path = heapq.heappop(heap)
        if node in done:
            continue
        if node == goal:
            return path
        done.add(node)
        for nxt, seg in adj.get(node, ()):
            if nxt not in done:
                heapq.heappush(heap, (dist + abs(seg.end - seg.start), key + (seg.edge,),
                                      nxt, path + (seg,)))
    raise NotOnCurve("points are not connected")


def abel_jacobi(cd: CurveData, a: PointOnCurve, b: PointOnCurve,
                chain: Chain | None = None) -> Vec:
    """(<rho, B_1>, ..., <rho, B_g>) for the path rho from a to b.

    Without an explicit chain the deterministic shortest path is used; the
    result is then one representative of a class modulo K Z^g.
    """
    G = build_graph(cd)
    if chain is None:
        chain = shortest_chain(G, a, b)
    return tuple(pairing(G, chain, B) for B in G.cycles)


def abel_jacobi_divisor(cd: CurveData, terms: Iterable[tuple[int, PointOnCurve]],
                        base: PointOnCurve) -> Vec:
    """Image of sum_i k_i P_i, each point joined to base by its shortest path."""
    total = tuple(Fraction(0) for _ in range(cd.g))
    for k, P in terms:
        total = vadd(total, vscale(k, abel_jacobi(cd, base, P)))
    return total


def lattice_coordinates(K: Mat, v: Sequence) -> Vec:
    """Solve v = l K for l."""
    return row_times(vec(v), inverse(K))


def congruent(K: Mat, u: Sequence, v: Sequence) -> bool:
    """u = v modulo the period lattice K Z^g."""
    return is_integral(lattice_coordinates(K, vsub(vec(u), vec(v))))


def tilde_T(g: int) -> Mat:
    """Unit anti-triangular T with (B~_1..B~_g) = (B_1..B_g) T."""
    return tuple(tuple(Fraction(int(i + j >= g - 1)) for j in range(g)) for i in range(g))


def tilde_cycles(G: MetricGraph) -> tuple[Chain, ...]:
    """B~_j = B_{g-j+1} + ... + B_g as formal sums."""
    g = G.g
    return tuple(tuple(s for i in range(g - j + 1, g + 1) for s in G.cycles[i - 1])
                 for j in range(1, g + 1))
