"""The length metric d_l on finite graphs and truncations.

Points are either vertex ids or ``(edge id, offset)`` pairs with
``0 < offset < length``, the offset measured from the edge's ``u`` end.
Distances are exact for int/Fraction lengths.  Unreachable pairs get the
sentinel :data:`INFINITY`.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from .generators import FiniteGraph, LazyGraph
from .graph import GraphError, Number, WeightedGraph, cycle_order, exact_sum, half_sum

INFINITY = math.inf

Point = Union[str, tuple[str, Number]]


class MetricError(ValueError):
    pass


def _lt(a: Number, b: Number) -> bool:
    """a < b, with a relative slack when floats are involved."""
    if isinstance(a, float) or isinstance(b, float):
        if math.isinf(b):
            return not math.isinf(a)
        return a < b - 1e-12 * max(1.0, abs(b))
    return a < b


def same_value(a: Number, b: Number) -> bool:
    return not _lt(a, b) and not _lt(b, a)


@dataclass(frozen=True)
class Leg:
    """A traversed piece of an edge, offsets measured from the edge's u end."""

    edge: str
    start: Number
    end: Number

    @property
    def length(self) -> Number:
        return abs(self.end - self.start)


@dataclass(frozen=True)
class DistanceResult:
    value: Number
    path: tuple[str, ...]
    legs: tuple[Leg, ...] = field(default=(), repr=False)
    level: int | None = None
    tolerance: Number = 0

    @property
    def reachable(self) -> bool:
        return self.value != INFINITY

    def path_length(self) -> Number:
        return exact_sum(leg.length for leg in self.legs)


# -- point helpers ------------------------------------------------------------------


def _check_point(g: WeightedGraph, p: Point) -> Point:
    if isinstance(p, str):
        if p not in g:
            raise MetricError(f"vertex {p!r} not in graph")
        return p
    eid, off = p
    e = g.edge(eid)
    if not 0 < off < e.length:
        if off == 0:
            return e.u
        if off == e.length:
            return e.v
        raise MetricError(f"offset {off!r} outside edge {eid!r} of length {e.length!r}")
    return (eid, off)


def _seeds(g: WeightedGraph, p: Point) -> list[tuple[str, Number, Leg | None]]:
    """Vertices reachable from p without crossing a vertex, with the leg used."""
    if isinstance(p, str):
        return [(p, 0, None)]
    eid, off = p
    e = g.edge(eid)
    out = [(e.u, off, Leg(eid, off, 0)), (e.v, e.length - off, Leg(eid, off, e.length))]
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def _dijkstra(
    g: WeightedGraph,
    seeds: Iterable[tuple[str, Number, Leg | None]],
    targets: set[str] | None = None,
    radius: Number | None = None,
) -> tuple[dict[str, Number], dict[str, tuple[str | None, Leg | None]]]:
    """Multi-source Dijkstra.

    Neighbours are relaxed in edge-id order and only strict improvements are
    accepted, so witnesses are deterministic.  Stops once every target is
    settled or the frontier exceeds ``radius``.
    """
    dist: dict[str, Number] = {}
    pred: dict[str, tuple[str | None, Leg | None]] = {}
    best: dict[str, Number] = {}
    heap: list = []
    for v, d0, leg in seeds:
        if v not in best or _lt(d0, best[v]):
            best[v] = d0
            pred[v] = (None, leg)
            heapq.heappush(heap, (d0, v))
    remaining = set(targets) if targets is not None else None
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist:
            continue
        if radius is not None and d > radius:
            break
        dist[v] = d
        if remaining is not None:
            remaining.discard(v)
            if not remaining:
                break
        for eid in g.incident(v):
            e = g.edge(eid)
            w = e.other(v)
            if w in dist:
                continue
            nd = d + e.length
            if w not in best or _lt(nd, best[w]):
                best[w] = nd
                leg = Leg(eid, 0, e.length) if v == e.u else Leg(eid, e.length, 0)
                pred[w] = (v, leg)
                heapq.heappush(heap, (nd, w))
    return dist, pred


def _walk_back(pred, v: str) -> list[Leg]:
    legs: list[Leg] = []
    while True:
        prev, leg = pred[v]
        if leg is not None:
            legs.append(leg)
        if prev is None:
            break
        v = prev
    legs.reverse()
    return legs


def dist(g: WeightedGraph, x: Point, y: Point, level: int | None = None) -> DistanceResult:
    """Exact shortest-path distance between two points of a finite graph."""
    x = _check_point(g, x)
    y = _check_point(g, y)
    if x == y:
        return DistanceResult(0, (), (), level)
    best_val: Number = INFINITY
    best_legs: list[Leg] = []
    if not isinstance(x, str) and not isinstance(y, str) and x[0] == y[0]:
        best_val = abs(x[1] - y[1])
        best_legs = [Leg(x[0], x[1], y[1])]
    ends = _seeds(g, y)
    dmap, pred = _dijkstra(g, _seeds(g, x), targets={v for v, _, _ in ends})
    for v, d_end, leg in ends:
        if v not in dmap:
            continue
        cand = dmap[v] + d_end
        if _lt(cand, best_val):
            best_val = cand
            best_legs = _walk_back(pred, v)
            if leg is not None:
                best_legs.append(Leg(leg.edge, leg.end, leg.start))
    path = tuple(leg.edge for leg in best_legs)
    return DistanceResult(best_val, path, tuple(best_legs), level)


def single_source(g: WeightedGraph, source: Point, radius: Number | None = None) -> dict[str, Number]:
    """Exact distances from ``source`` to every vertex (within ``radius`` if given)."""
    source = _check_point(g, source)
    d, _ = _dijkstra(g, _seeds(g, source), radius=radius)
    return d


def all_pairs(g: WeightedGraph) -> dict[str, dict[str, Number]]:
    """Exact all-pairs vertex distances; missing entries are unreachable."""
    return {v: single_source(g, v) for v in g.vertices}


def distance_matrix(g: WeightedGraph, sources: Sequence[str], targets: Sequence[str] | None = None) -> np.ndarray:
    """Float distance matrix computed with scipy's compiled Dijkstra (bulk use only)."""
    index = {v: i for i, v in enumerate(g.vertices)}
    best: dict[tuple[int, int], float] = {}
    for e in g.edges.values():
        if e.is_loop:
            continue
        a, b = sorted((index[e.u], index[e.v]))
        w = float(e.length)
        if (a, b) not in best or w < best[(a, b)]:
            best[(a, b)] = w
    n = len(index)
    if best:
        rows, cols = zip(*best)
        mat = coo_matrix((list(best.values()), (rows, cols)), shape=(n, n)).tocsr()
    else:
        mat = coo_matrix((n, n)).tocsr()
    src = [index[s] for s in sources]
    out = _sp_dijkstra(mat, directed=False, indices=src)
    tgt = src if targets is None else [index[t] for t in targets]
    return np.atleast_2d(out)[:, tgt]


# -- exhaustions ----------------------------------------------------------------------


def _as_lazy(g: WeightedGraph | LazyGraph) -> LazyGraph:
    return FiniteGraph(g) if isinstance(g, WeightedGraph) else g


@dataclass(frozen=True)
class DistanceTrace:
    results: tuple[DistanceResult, ...]
    skipped: tuple[tuple[int, str], ...]

    @property
    def values(self) -> list[Number]:
        return [r.value for r in self.results]

    def is_antitone(self) -> bool:
        vals = self.values
        return all(not _lt(a, b) for a, b in zip(vals, vals[1:]))


def dist_limit(g: LazyGraph, x: str, y: str, levels: Iterable[int]) -> DistanceTrace:
    """Distances between x and y in successive truncations (nonincreasing in the level)."""
    results, skipped = [], []
    for n in sorted(levels):
        t = g.truncate(n)
        missing = [v for v in (x, y) if v not in t.graph]
        if missing:
            skipped.append((n, f"vertex {missing[0]!r} not yet emitted at level {n}"))
            continue
        r = dist(t.graph, x, y, level=n)
        results.append(r)
    return DistanceTrace(tuple(results), tuple(skipped))


def certified_lower_bound(g: WeightedGraph | LazyGraph, x: str, y: str) -> Number:
    """Lower bound on d(x, y) in the ideal graph from the edges at x and y.

    Every x-y path leaves x through an edge at x and enters y through an edge
    at y, so d(x, y) >= max(inf of lengths at x, inf at y).  Returns 0 when
    nothing positive can be certified.
    """
    if x == y:
        return 0
    lg = _as_lazy(g)
    bounds = [lg.incident_length_infimum(v) for v in (x, y)]
    bounds = [b for b in bounds if b is not None]
    return max(bounds, default=0)


@dataclass(frozen=True)
class QuotientPartition:
    classes: tuple[tuple[str, ...], ...]
    tau: Number
    level: int
    shrinking: tuple[bool, ...]
    compare_level: int | None = None

    def class_of(self, v: str) -> tuple[str, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)

    def same_class(self, x: str, y: str) -> bool:
        return y in self.class_of(x)


def _union_find_classes(vertices: Sequence[str], pairs: Iterable[tuple[str, str]]) -> list[list[str]]:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[str, list[str]] = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _max_pairwise(g: WeightedGraph, members: Sequence[str]) -> Number:
    worst: Number = 0
    for i, a in enumerate(members):
        d = single_source(g, a)
        for b in members[i + 1:]:
            worst = max(worst, d.get(b, INFINITY))
    return worst


def quotient(g: WeightedGraph | LazyGraph, level: int, tau: Number, compare_level: int | None = None,
             max_class_check: int = 40) -> QuotientPartition:
    """Classes of vertices at distance <= tau in G_level (transitively closed).

    A class is flagged as shrinking if its diameter at ``level`` is strictly
    smaller than at ``compare_level`` (default ``level - 1``), i.e. its members
    are still moving together as the exhaustion grows.
    """
    if not tau > 0:
        raise MetricError("tau must be positive")
    lg = _as_lazy(g)
    t = lg.truncate(level)
    pairs = []
    for v in t.graph.vertices:
        for w, d in single_source(t.graph, v, radius=tau).items():
            if w != v and not _lt(tau, d):
                pairs.append((v, w))
    classes = _union_find_classes(t.graph.vertices, pairs)
    cmp_level = compare_level if compare_level is not None else max(level - 1, 0)
    shrinking = []
    if cmp_level == level or lg.max_level is not None and cmp_level >= lg.max_level:
        shrinking = [False] * len(classes)
    else:
        old = lg.truncate(cmp_level).graph
        for c in classes:
            members = [v for v in c if v in old][:max_class_check]
            if len(members) < 2:
                shrinking.append(False)
                continue
            shrinking.append(_lt(_max_pairwise(t.graph, members), _max_pairwise(old, members)))
    return QuotientPartition(tuple(tuple(c) for c in classes), tau, level, tuple(shrinking), cmp_level)


# -- cycles, midpoints, curves --------------------------------------------------------


@dataclass(frozen=True)
class GeodecityResult:
    geodetic: bool
    pair: tuple[str, str] | None = None
    shorter_path: tuple[str, ...] = ()
    arc_lengths: tuple[Number, Number] | None = None
    distance: Number | None = None

    def __bool__(self) -> bool:
        return self.geodetic


def is_geodetic_cycle(g: WeightedGraph, cycle_edges: Iterable[str]) -> GeodecityResult:
    """Check that for every vertex pair on the cycle one of its two arcs is a shortest path.

    On failure the result names a violating pair and a strictly shorter path.
    """
    try:
        verts, order = cycle_order(g, cycle_edges)
    except GraphError as exc:
        raise MetricError(str(exc)) from None
    k = len(verts)
    prefix: list[Number] = [0]
    for eid in order:
        prefix.append(prefix[-1] + g.length(eid))
    total = prefix[-1]
    for i in range(k):
        dmap, pred = _dijkstra(g, [(verts[i], 0, None)], targets=set(verts[i + 1:]) or None)
        for j in range(i + 1, k):
            arc = prefix[j] - prefix[i]
            short_arc = min(arc, total - arc)
            d = dmap.get(verts[j], INFINITY)
            if _lt(d, short_arc):
                path = tuple(leg.edge for leg in _walk_back(pred, verts[j]))
                return GeodecityResult(False, (verts[i], verts[j]), path, (arc, total - arc), d)
    return GeodecityResult(True)


@dataclass(frozen=True)
class Midpoint:
    point: Point
    to_x: Number
    to_y: Number
    path_length: Number


def approximate_midpoint(g: WeightedGraph, x: Point, y: Point, eps: Number = 0) -> Midpoint:
    """Point halfway along a shortest x-y path.

    The shortest path is exact here, so |d(x,z) - d(z,y)| is 0 up to float
    rounding; ``eps`` is the tolerance the result is checked against.
    """
    r = dist(g, x, y)
    if not r.reachable:
        raise MetricError(f"{x!r} and {y!r} are not connected")
    half = half_sum(r.value, 0)
    walked: Number = 0
    z: Point = x if isinstance(x, str) else _check_point(g, x)
    for leg in r.legs:
        if not _lt(walked + leg.length, half):
            rest = half - walked
            off = leg.start + rest if leg.end >= leg.start else leg.start - rest
            z = _check_point(g, (leg.edge, off)) if 0 < off < g.length(leg.edge) else (
                g.edge(leg.edge).u if off <= 0 else g.edge(leg.edge).v)
            break
        walked += leg.length
    else:
        z = y
    to_x = dist(g, x, z).value
    to_y = dist(g, z, y).value
    if _lt(eps, abs(to_x - to_y)) and not same_value(abs(to_x - to_y), eps):
        raise MetricError("midpoint construction failed its tolerance check")
    return Midpoint(z, to_x, to_y, r.value)


def _on_common_edge(g: WeightedGraph, p: Point, q: Point) -> tuple[str, Number, Number] | None:
    """Edge carrying both points plus their offsets on it, if any."""
    def offsets(pt: Point) -> dict[str, Number]:
        if isinstance(pt, str):
            out = {}
            for eid in g.incident(pt):
                e = g.edge(eid)
                if not e.is_loop:
                    out[eid] = 0 if e.u == pt else e.length
            return out
        return {pt[0]: pt[1]}

    op, oq = offsets(p), offsets(q)
    common = sorted(set(op) & set(oq), key=lambda eid: (g.length(eid), eid))
    if not common:
        return None
    eid = common[0]
    return eid, op[eid], oq[eid]


def refine_walk(g: WeightedGraph, walk: Sequence[Point], refinement: int, cyclic: bool = False) -> list[Point]:
    """Insert 2^refinement - 1 evenly spaced points between consecutive walk points on a common edge."""
    pts = [_check_point(g, p) for p in walk]
    if refinement <= 0 or len(pts) < 2:
        return pts
    pieces = 2**refinement
    seq = pts + [pts[0]] if cyclic else pts
    out: list[Point] = []
    for p, q in zip(seq, seq[1:]):
        out.append(p)
        common = _on_common_edge(g, p, q)
        if common is None:
            continue
        eid, a, b = common
        for k in range(1, pieces):
            step = k / pieces if isinstance(a - b, float) else Fraction(k, pieces)
            off = a + (b - a) * step
            out.append(_check_point(g, (eid, off)))
    if not cyclic:
        out.append(seq[-1])
    return out


def curve_length(g: WeightedGraph, walk: Sequence[Point], refinement: int = 0, cyclic: bool = False) -> Number:
    """Polygonal length estimate: sum of d between consecutive sample points.

    This is a lower bound for the length of the curve the walk traces, and it
    is nondecreasing under refinement (nested dyadic samples plus the triangle
    inequality).
    """
    pts = refine_walk(g, walk, refinement, cyclic=cyclic)
    if cyclic and len(pts) > 1:
        pts = pts + [pts[0]]
    return exact_sum(dist(g, p, q).value for p, q in zip(pts, pts[1:]))


@dataclass(frozen=True)
class NlfReport:
    """For each number n of removed edges: largest distance between vertices of a surviving subarc."""

    spread: tuple[Number, ...]
    first_n: dict

    def minimal_n(self, eps: Number) -> int | None:
        return self.first_n.get(eps)


def eps_nlf_profile(g: WeightedGraph, arc_edges: Sequence[str], edge_order: Sequence[str],
                    eps_list: Sequence[Number]) -> NlfReport:
    """Diagnostic: how many enumerated edges must be cut before every remaining subarc is eps-small.

    ``arc_edges`` is an edge path (the arc), ``edge_order`` an enumeration of
    edges.  For n = 0..len(edge_order), removing the interiors of the first n
    edges splits the arc into subarcs; ``spread[n]`` is the largest distance
    between two vertices of one subarc.  ``first_n[eps]`` is the least n with
    spread below eps (None if never reached).
    """
    if not arc_edges:
        return NlfReport((0,), {eps: 0 for eps in eps_list})
    first = g.edge(arc_edges[0])
    if len(arc_edges) > 1:
        nxt = g.edge(arc_edges[1])
        start = first.u if first.u not in (nxt.u, nxt.v) else first.v
    else:
        start = first.u
    verts = [start]
    for eid in arc_edges:
        verts.append(g.edge(eid).other(verts[-1]))
    dmaps = {v: single_source(g, v) for v in set(verts)}

    def seg_spread(lo: int, hi: int) -> Number:
        seg = verts[lo:hi + 1]
        return max((dmaps[a].get(b, INFINITY) for a, b in itertools.combinations(seg, 2)), default=0)

    spreads: list[Number] = []
    for n in range(len(edge_order) + 1):
        removed = set(edge_order[:n])
        worst: Number = 0
        lo = 0
        for i, eid in enumerate(arc_edges):
            if eid in removed:
                worst = max(worst, seg_spread(lo, i))
                lo = i + 1
        worst = max(worst, seg_spread(lo, len(arc_edges)))
        spreads.append(worst)
    first_n = {}
    for eps in eps_list:
        first_n[eps] = next((n for n, s in enumerate(spreads) if _lt(s, eps)), None)
    return NlfReport(tuple(spreads), first_n)
