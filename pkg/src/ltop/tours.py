"""Euler tours by cycle insertion, and the Euler tour to Hamilton cycle transform.

An Euler tour of a connected graph with all degrees even is built the way
the textbook argument goes: start from one cycle, decompose what is left into
edge-disjoint circuits, and splice each circuit into the tour at a vertex the
two share.  Every splice is recorded in an insertion log.

Reading the tour's edges in order gives a Hamilton cycle of the line graph.
Passing through vertex y along ``e`` then ``e'`` uses the line-graph edge
joining e and e' at y.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclespace import CycleSpaceElement, CycleSpaceError, circuit_decomposition
from .generators import Truncation
from .graph import Number, WeightedGraph, cycle_order, exact_sum, half_sum, line_edge_id


class TourError(ValueError):
    pass


@dataclass(frozen=True)
class ParityReport:
    ok: bool
    odd: tuple[str, ...]
    witness: str | None
    frontier_odd: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def odd_cut_check(g: WeightedGraph | Truncation, frontier: Iterable[str] | None = None) -> ParityReport:
    """Check that no vertex has odd degree, i.e. that no finite cut is odd.

    For a truncation, frontier vertices (whose degree is still growing) are
    excluded from the verdict and reported separately.
    """
    if isinstance(g, Truncation):
        frontier = g.frontier if frontier is None else frontier
        g = g.graph
    front = set(frontier or ())
    odd = tuple(v for v in g.vertices if g.degree(v) % 2 and v not in front)
    fodd = tuple(v for v in g.vertices if g.degree(v) % 2 and v in front)
    return ParityReport(not odd, odd, odd[0] if odd else None, fodd)


@dataclass(frozen=True)
class Insertion:
    step: int
    at: str
    circuit: tuple[str, ...]
    position: int


@dataclass(frozen=True)
class Tour:
    kind: str  # "euler" | "hamilton"
    edges: tuple[str, ...] = ()
    vertices: tuple[str, ...] = ()
    host: str = ""
    log: tuple[Insertion, ...] = field(default=(), repr=False)
    line_edges: tuple[str, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        if self.kind == "euler":
            return {"kind": "euler", "edges": list(self.edges)}
        return {"kind": "hamilton", "vertices": list(self.vertices)}


def _walk_vertices(g: WeightedGraph, edges: Sequence[str], start: str) -> list[str]:
    """Vertices visited by the closed edge walk from ``start`` (last = first)."""
    verts = [start]
    for eid in edges:
        e = g.edge(eid)
        here = verts[-1]
        if here not in (e.u, e.v):
            raise TourError(f"edge {eid!r} does not continue the walk at {here!r}")
        verts.append(e.other(here))
    return verts


def _circuit_walk(g: WeightedGraph, circuit: Iterable[str], start: str) -> list[str]:
    """The circuit's edges as a closed walk starting and ending at ``start``."""
    verts, order = cycle_order(g, circuit)
    i = verts.index(start)
    return order[i:] + order[:i]


def euler_tour(g: WeightedGraph, start: Iterable[str] | None = None) -> Tour:
    """Euler tour by splicing circuits into a starting cycle.

    ``start`` optionally names the edges of the initial cycle; otherwise the
    first circuit of the decomposition of E(g) is used.  The remaining edges
    are decomposed into circuits; repeatedly the circuit with the smallest
    edge id among those touching the tour is spliced in at the earliest tour
    vertex it meets.
    """
    par = odd_cut_check(g)
    if not par.ok:
        raise TourError(f"vertex {par.witness!r} has odd degree")
    used_vertices = [v for v in g.vertices if g.degree(v) > 0]
    if not g.edges:
        raise TourError("graph has no edges")
    comps = [c for c in g.components() if any(g.degree(v) for v in c)]
    if len(comps) > 1:
        raise TourError(f"edges lie in {len(comps)} components; no closed tour covers them")
    if len(used_vertices) != len(g.vertices):
        isolated = next(v for v in g.vertices if g.degree(v) == 0)
        raise TourError(f"vertex {isolated!r} is isolated")
    all_edges = CycleSpaceElement.of(g, g.edges)
    if start is None:
        circuits = list(circuit_decomposition(all_edges).circuits)
        first = circuits.pop(0)
    else:
        first = frozenset(start)
        try:
            is_cycle = CycleSpaceElement.of(g, first).is_circuit()
        except CycleSpaceError:
            is_cycle = False
        if not is_cycle:
            raise TourError("start hint is not a cycle")
        circuits = list(circuit_decomposition(CycleSpaceElement.of(g, all_edges.edges - first)).circuits)
    v0, _ = cycle_order(g, first)
    tour_edges = _circuit_walk(g, first, v0[0])
    tour_verts = _walk_vertices(g, tour_edges, v0[0])
    log: list[Insertion] = []
    pending = sorted(circuits, key=min)
    step = 0
    while pending:
        on_tour = {v: i for i, v in reversed(list(enumerate(tour_verts[:-1])))}
        for k, circ in enumerate(pending):
            cverts, _ = cycle_order(g, circ)
            hits = [v for v in cverts if v in on_tour]
            if hits:
                break
        else:
            raise TourError("remaining circuits do not touch the tour")  # unreachable when connected
        pending.pop(k)
        at = min(hits, key=lambda v: on_tour[v])
        pos = on_tour[at]
        piece = _circuit_walk(g, circ, at)
        tour_edges = tour_edges[:pos] + piece + tour_edges[pos:]
        tour_verts = _walk_vertices(g, tour_edges, tour_verts[0])
        step += 1
        log.append(Insertion(step, at, tuple(piece), pos))
    return Tour("euler", tuple(tour_edges), tuple(tour_verts[:-1]), g.name, tuple(log))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violation: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_euler(g: WeightedGraph, t: Tour) -> Verdict:
    """Each edge exactly once, consecutive edges share the right vertex, and the walk closes."""
    if t.kind != "euler":
        return Verdict(False, "kind", f"expected an euler tour, got {t.kind!r}")
    counts = Counter(t.edges)
    for eid, k in sorted(counts.items()):
        if eid not in g.edges:
            return Verdict(False, "unknown edge", eid)
        if k > 1:
            return Verdict(False, "repeated edge", eid)
    missing = sorted(set(g.edges) - set(counts))
    if missing:
        return Verdict(False, "coverage", missing[0])
    if not t.edges:
        return Verdict(False, "empty")
    first = g.edge(t.edges[0])
    for s in dict.fromkeys((first.u, first.v)):
        try:
            verts = _walk_vertices(g, t.edges, s)
        except TourError:
            continue
        if verts[-1] == verts[0]:
            return Verdict(True)
    return Verdict(False, "closure", "walk is broken or does not return to its start")


def euler_to_hamilton(g: WeightedGraph, t: Tour) -> Tour:
    """Hamilton cycle of line_graph(g) visiting the tour's edges in order.

    The passage through the tour vertex between e_i and e_{i+1} (cyclically)
    selects the line-graph edge joining them at that vertex.
    """
    v = verify_euler(g, t)
    if not v.ok:
        raise TourError(f"not an Euler tour: {v.violation} {v.detail}".strip())
    if len(t.edges) < 2:
        raise TourError("a single-edge tour (a loop) has no line-graph cycle")
    first = g.edge(t.edges[0])
    for s in dict.fromkeys((first.u, first.v)):
        try:
            verts = _walk_vertices(g, t.edges, s)
        except TourError:
            continue
        if verts[-1] == verts[0]:
            break
    m = len(t.edges)
    line_edges = []
    for i in range(m):
        e, d = t.edges[i], t.edges[(i + 1) % m]
        line_edges.append(line_edge_id(e, d, verts[i + 1]))
    if len(set(line_edges)) < m:
        raise TourError("two passages map to the same line-graph edge (two loops at one vertex)")
    return Tour("hamilton", (), tuple(t.edges), f"L({g.name})", (), tuple(line_edges))


def hamilton_verify(h: WeightedGraph, t: Tour) -> Verdict:
    """Check injectivity, then coverage, then that consecutive vertices are adjacent (cyclically).

    If the tour names its line edges, they must exist, join the right
    vertices and be pairwise distinct.
    """
    if t.kind != "hamilton":
        return Verdict(False, "kind", f"expected a hamilton tour, got {t.kind!r}")
    seq = t.vertices
    counts = Counter(seq)
    rep = next((v for v in seq if counts[v] > 1), None)
    if rep is not None:
        return Verdict(False, "injectivity", rep)
    unknown = next((v for v in seq if v not in h), None)
    if unknown is not None:
        return Verdict(False, "unknown vertex", unknown)
    missing = next((v for v in h.vertices if v not in counts), None)
    if missing is not None:
        return Verdict(False, "coverage", missing)
    m = len(seq)
    if m < 2:
        return Verdict(False, "closure", "fewer than two vertices")
    if t.line_edges:
        if len(t.line_edges) != m:
            return Verdict(False, "adjacency", "one edge per step required")
        if len(set(t.line_edges)) != m:
            return Verdict(False, "adjacency", "an edge is used twice")
        for i, eid in enumerate(t.line_edges):
            a, b = seq[i], seq[(i + 1) % m]
            if eid not in h.edges or {h.edge(eid).u, h.edge(eid).v} != {a, b}:
                return Verdict(False, "adjacency", f"{a!r} -> {b!r} via {eid!r}")
        return Verdict(True)
    if m == 2:
        a, b = seq
        if sum(1 for _, w in h.neighbors(a) if w == b) < 2:
            return Verdict(False, "adjacency", f"{a!r} -> {b!r} needs two parallel edges")
        return Verdict(True)
    for i in range(m):
        a, b = seq[i], seq[(i + 1) % m]
        if not any(w == b for _, w in h.neighbors(a)):
            return Verdict(False, "adjacency", f"{a!r} -> {b!r}")
    return Verdict(True)


def hamilton_length(h: WeightedGraph, t: Tour) -> Number:
    """Length of the Hamilton cycle in h, using its recorded line edges when present."""
    if t.line_edges:
        return exact_sum(h.length(e) for e in t.line_edges)
    m = len(t.vertices)
    total = []
    for i in range(m):
        a, b = t.vertices[i], t.vertices[(i + 1) % m]
        total.append(min(h.length(eid) for eid, w in h.neighbors(a) if w == b))
    return exact_sum(total)


def passage_length(g: WeightedGraph, t: Tour) -> Number:
    """sum of (l(e_i) + l(e_{i+1})) / 2 over the tour, which telescopes to the total length."""
    m = len(t.edges)
    return exact_sum(half_sum(g.length(t.edges[i]), g.length(t.edges[(i + 1) % m])) for i in range(m))


__all__ = [
    "Insertion", "ParityReport", "Tour", "TourError", "Verdict", "euler_to_hamilton", "euler_tour",
    "hamilton_length", "hamilton_verify", "odd_cut_check", "passage_length", "verify_euler",
]
