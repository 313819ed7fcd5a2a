"""Approximating the boundary of the completion, and special length assignments.

Boundary points are invisible at any finite level, so they are approached
through frontiers: the frontier vertices of ``G_n`` are clustered by their
distances in a strictly deeper truncation ``G_m``.  The module also holds the
special length assignments (Floyd lengths, lengths from a normal spanning
tree, the Lind graph of a metric sample) and the extraction of ends and of
combs or stars from an exhaustion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Iterable, Mapping, Sequence

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from .generators import (
    FiniteGraph,
    LazyGraph,
    Level,
    LindGraph,
    bfs_hops,
)
from .graph import GraphError, Number, WeightedGraph
from .metric import _dijkstra, dist, distance_matrix, same_value

DEFAULT_EPS: tuple[Fraction, ...] = tuple(Fraction(1, 2**k) for k in range(1, 11))


class CompletionError(ValueError):
    pass


# -- decay functions -----------------------------------------------------------------


@dataclass(frozen=True)
class Decay:
    """A named decay function f: N -> R>0.

    ``pow2`` and ``pow4`` are exact (fractions), ``const`` is 1, and
    ``exp:lam`` is exp(-lam * n) in floating point.
    """

    kind: str
    lam: float | None = None

    def __call__(self, n: int) -> Number:
        if n < 0:
            raise CompletionError("decay functions are defined on n >= 0")
        if self.kind == "pow2":
            return Fraction(1, 2**n)
        if self.kind == "pow4":
            return Fraction(1, 4**n)
        if self.kind == "const":
            return 1
        if self.kind == "exp":
            return math.exp(-self.lam * n)
        raise CompletionError(f"unknown decay {self.kind!r}")

    @property
    def label(self) -> str:
        return f"exp:{self.lam}" if self.kind == "exp" else self.kind

    @property
    def summable(self) -> bool:
        return self.kind != "const" and (self.kind != "exp" or self.lam > 0)


def parse_decay(text: str) -> Decay:
    """Accepts ``pow2``, ``pow4``, ``const``, ``exp:0.5``, optionally prefixed by ``f=``."""
    body = text.strip()
    if body.startswith("f="):
        body = body[2:]
    if body in ("pow2", "pow4", "const"):
        return Decay(body)
    if body.startswith("exp:"):
        try:
            lam = float(body[4:])
        except ValueError:
            raise CompletionError(f"bad exp rate in {text!r}") from None
        if not math.isfinite(lam):
            raise CompletionError(f"bad exp rate in {text!r}")
        return Decay("exp", lam)
    raise CompletionError(f"unknown decay function {text!r}; use pow2, pow4, const or exp:<rate>")


@dataclass(frozen=True)
class Admissibility:
    """Behaviour of the decay on 0..upto.

    ``lam`` is the largest constant with lam * f(n-1) <= f(n) on that range.
    """

    upto: int
    positive: bool
    nonincreasing: bool
    lam: float
    summable: bool

    @property
    def ok(self) -> bool:
        return self.positive and self.nonincreasing and self.lam > 0


def admissibility(f: Decay, upto: int) -> Admissibility:
    vals = [f(n) for n in range(upto + 1)]
    positive = all(v > 0 for v in vals)
    nonincr = all(b <= a for a, b in zip(vals, vals[1:]))
    ratios = [float(b) / float(a) for a, b in zip(vals, vals[1:]) if a > 0]
    return Admissibility(upto, positive, nonincr, min(ratios, default=1.0), f.summable)


# -- Floyd lengths -------------------------------------------------------------------


@dataclass(frozen=True)
class FloydGraph(LazyGraph):
    """The base lazy graph with every edge re-weighted to f(hop distance from the basepoint).

    The hop distance of an edge is the least number of edges on a path from
    the basepoint to one of its ends.  It is read off ``G_{n + lookahead}``
    for edges of level n; :meth:`unstable_hops` compares against deeper levels.
    """

    base: LazyGraph
    decay: Decay
    basepoint: str
    lookahead: int = 1

    name: ClassVar[str] = "floyd"
    doc: ClassVar[str] = "base generator with Floyd lengths f(hop distance)"

    def spec_string(self) -> str:
        return f"{self.base.spec_string()}|floyd:{self.decay.label}@{self.basepoint}"

    @property
    def max_level(self):
        return self.base.max_level

    @property
    def locally_finite(self):  # type: ignore[override]
        return self.base.locally_finite

    def hops(self, n: int) -> dict[str, int]:
        return _hops(self.base, self.basepoint, n)

    def edge_hop(self, u: str, v: str, at: int) -> int:
        h = self.hops(at)
        cands = [h[w] for w in (u, v) if w in h]
        if not cands:
            raise CompletionError(f"edge {u}-{v} unreachable from basepoint {self.basepoint!r}")
        return min(cands)

    def emit(self, n):
        lvl = self.base.level(n)
        at = n + self.lookahead if self.max_level is None else self.max_level
        edges = tuple((eid, u, v, self.decay(self.edge_hop(u, v, at)), kind)
                      for eid, u, v, _, kind in lvl.edges)
        return Level(lvl.vertices, edges)

    def declared_totals(self):
        return {"edge": None}

    def unstable_hops(self, n: int, deeper: int) -> list[str]:
        """Edges of G_n whose hop distance drops when measured in G_deeper."""
        out = []
        t = self.base.truncate(n)
        for e in t.graph.edges.values():
            at = t.edge_level[e.id] + self.lookahead
            if self.max_level is not None:
                at = self.max_level
            if self.edge_hop(e.u, e.v, deeper) != self.edge_hop(e.u, e.v, at):
                out.append(e.id)
        return out


@lru_cache(maxsize=64)
def _hops(base: LazyGraph, p: str, n: int) -> dict[str, int]:
    t = base.truncate(n)
    if p not in t.graph:
        raise CompletionError(f"basepoint {p!r} not in the level-{n} truncation")
    return bfs_hops(t.graph, p)


def floyd_lengths(g: LazyGraph | WeightedGraph, f: Decay | str, basepoint: str,
                  check_upto: int = 32, lookahead: int = 1) -> FloydGraph:
    """Re-weight ``g`` with Floyd lengths f(hop distance from ``basepoint``).

    ``f`` is checked to be positive and nonincreasing on 0..check_upto.
    """
    lg = FiniteGraph(g) if isinstance(g, WeightedGraph) else g
    f = parse_decay(f) if isinstance(f, str) else f
    adm = admissibility(f, check_upto)
    if not adm.positive:
        raise CompletionError(f"decay {f.label} is not positive on 0..{check_upto}")
    if not adm.nonincreasing:
        raise CompletionError(f"decay {f.label} increases somewhere on 0..{check_upto}")
    try:
        lg._vertex_level(basepoint)
    except GraphError:
        raise CompletionError(f"basepoint {basepoint!r} is not a vertex of {lg.spec_string()}") from None
    return FloydGraph(lg, f, basepoint, lookahead)


# -- boundary profile ----------------------------------------------------------------


@dataclass(frozen=True)
class Clustering:
    eps: Number
    labels: tuple[int, ...]  # cluster index per frontier vertex, 0-based, in frontier order
    count: int
    diameters: tuple[float, ...]
    separation: tuple[tuple[float, ...], ...]  # min distance between clusters

    def clusters(self, frontier: Sequence[str]) -> list[list[str]]:
        out: list[list[str]] = [[] for _ in range(self.count)]
        for v, c in zip(frontier, self.labels):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class LevelProfile:
    level: int
    frontier: tuple[str, ...]
    diameter: float
    clusterings: tuple[Clustering, ...]
    end_of: dict = field(repr=False)  # frontier vertex -> end component index (or -1 for the core)

    def count(self, eps: Number) -> int:
        for c in self.clusterings:
            if c.eps == eps:
                return c.count
        raise KeyError(eps)

    def cluster_ends(self, c: Clustering) -> list[set[int]]:
        """End components met by each cluster."""
        out: list[set[int]] = [set() for _ in range(c.count)]
        for v, lab in zip(self.frontier, c.labels):
            out[lab].add(self.end_of[v])
        return out


@dataclass(frozen=True)
class BoundaryProfile:
    generator: str
    depth: int
    linkage: str
    eps: tuple[Number, ...]
    levels: tuple[LevelProfile, ...]

    def at(self, level: int) -> LevelProfile:
        for lp in self.levels:
            if lp.level == level:
                return lp
        raise KeyError(level)

    def rows(self) -> list[tuple[int, Number, int]]:
        return [(lp.level, c.eps, c.count) for lp in self.levels for c in lp.clusterings]


def _relabel(raw: np.ndarray) -> tuple[int, ...]:
    """Cluster labels renumbered by first appearance, so output is deterministic."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(int(x), len(seen)) for x in raw)


def cluster_frontier(D: np.ndarray, eps: Number, method: str = "complete") -> Clustering:
    """Cluster points whose distance matrix is ``D`` at resolution eps.

    ``single``: transitive closure of pairs at distance < eps.
    ``complete``: agglomerative complete linkage stopped before any merged
    cluster would reach diameter eps, so every cluster has diameter < eps.
    """
    k = D.shape[0]
    if k == 0:
        return Clustering(eps, (), 0, (), ())
    if k == 1:
        labels = (0,)
    else:
        Z = linkage(squareform(D, checks=False), method=method)
        t = np.nextafter(float(eps), 0.0)
        labels = _relabel(fcluster(Z, t, criterion="distance"))
    count = max(labels) + 1
    idx = [np.flatnonzero(np.array(labels) == c) for c in range(count)]
    diam = tuple(float(D[np.ix_(i, i)].max()) for i in idx)
    sep = tuple(tuple(0.0 if a == b else float(D[np.ix_(idx[a], idx[b])].min()) for b in range(count))
                for a in range(count))
    return Clustering(eps, labels, count, diam, sep)


def boundary_profile(g: LazyGraph, levels: Iterable[int], depth: int,
                     eps_list: Sequence[Number] = DEFAULT_EPS, method: str = "complete") -> BoundaryProfile:
    """Frontier clusterings of each requested level, with distances measured in G_depth."""
    levels = sorted(set(levels))
    if not levels:
        raise CompletionError("no levels requested")
    if depth <= levels[-1]:
        raise CompletionError(f"depth {depth} must exceed every level (max {levels[-1]})")
    if method not in ("complete", "single"):
        raise CompletionError(f"unknown linkage {method!r}")
    deep = g.truncate(depth).graph
    eps_sorted = tuple(sorted(eps_list, reverse=True))
    profiles = []
    for n in levels:
        frontier = g.truncate(n).frontier
        D = distance_matrix(deep, frontier) if frontier else np.zeros((0, 0))
        clusterings = tuple(cluster_frontier(D, e, method) for e in eps_sorted)
        ed = ends(g, max(n, 1))
        end_of = {v: ed.component_of(v) for v in frontier}
        profiles.append(LevelProfile(n, frontier, float(D.max()) if D.size else 0.0, clusterings, end_of))
    return BoundaryProfile(g.spec_string(), depth, method, eps_sorted, tuple(profiles))


# -- normal spanning tree lengths ----------------------------------------------------


@dataclass(frozen=True)
class NstResult:
    root: str
    parent: Mapping[str, str | None]
    parent_edge: Mapping[str, str | None]
    level: Mapping[str, int]
    lengths: Mapping[str, Fraction]
    graph: WeightedGraph

    @property
    def tree_edges(self) -> frozenset[str]:
        return frozenset(e for e in self.parent_edge.values() if e is not None)

    def _chain(self, v: str) -> list[str]:
        chain = [v]
        while self.parent[chain[-1]] is not None:
            chain.append(self.parent[chain[-1]])
        return chain

    def tree_path(self, x: str, y: str) -> list[str]:
        """Tree edges on the x-y path in T."""
        ax, ay = self._chain(x), self._chain(y)
        common = set(ay)
        lca = next(v for v in ax if v in common)
        return [self.parent_edge[v] for chain in (ax, ay) for v in chain[: chain.index(lca)]]

    def tree_distance(self, x: str, y: str) -> Fraction:
        """Length of the T-path between x and y, via the telescoped closed form."""
        common = set(self._chain(y))
        lca = next(v for v in self._chain(x) if v in common)
        return level_gap_length(self.level[lca], self.level[x]) + level_gap_length(self.level[lca], self.level[y])


def level_gap_length(a: int, b: int) -> Fraction:
    """sum_{a < n <= b} 2^-n for a <= b."""
    lo, hi = min(a, b), max(a, b)
    return Fraction(1, 2**lo) - Fraction(1, 2**hi)


def dfs_tree(g: WeightedGraph, root: str) -> tuple[dict[str, str | None], dict[str, str | None], dict[str, int]]:
    """Iterative depth-first tree, neighbours taken in edge-id order.

    Returns parent vertex, parent edge and depth for every vertex reached.
    """
    parent: dict[str, str | None] = {root: None}
    pedge: dict[str, str | None] = {root: None}
    level = {root: 0}
    stack = [(root, iter(g.incident(root)))]
    while stack:
        v, it = stack[-1]
        for eid in it:
            w = g.edge(eid).other(v)
            if w not in parent:
                parent[w] = v
                pedge[w] = eid
                level[w] = level[v] + 1
                stack.append((w, iter(g.incident(w))))
                break
        else:
            stack.pop()
    return parent, pedge, level


def nst_lengths(g: WeightedGraph, root: str) -> NstResult:
    """Lengths from a depth-first (hence normal) spanning tree rooted at ``root``.

    Edge uv with r(u) < r(v) gets sum_{r(u) < n <= r(v)} 2^-n, which telescopes
    to 2^-r(u) - 2^-r(v).
    """
    if root not in g:
        raise CompletionError(f"root {root!r} not in graph")
    loops = [e.id for e in g.edges.values() if e.is_loop]
    if loops:
        raise CompletionError(f"loop {loops[0]!r} has no level gap; remove loops first")
    parent, pedge, level = dfs_tree(g, root)
    if len(parent) != len(g.vertices):
        missing = next(v for v in g.vertices if v not in parent)
        raise CompletionError(f"graph is disconnected: {missing!r} unreachable from {root!r}")
    lengths = {e.id: level_gap_length(level[e.u], level[e.v]) for e in g.edges.values()}
    return NstResult(root, parent, pedge, level, lengths, g.with_lengths(lengths))


# -- Lind realization ----------------------------------------------------------------


def check_metric(points: Sequence[str], d: Sequence[Sequence[Number]]) -> tuple[str, tuple] | None:
    """First violated metric axiom with its witness, or None."""
    k = len(points)
    if len(set(points)) != k:
        return ("distinct points", tuple(p for p in points if points.count(p) > 1)[:1])
    if len(d) != k or any(len(row) != k for row in d):
        return ("square matrix", (k,))
    for i in range(k):
        if d[i][i] != 0:
            return ("zero diagonal", (points[i],))
        for j in range(k):
            if d[i][j] != d[j][i]:
                return ("symmetry", (points[i], points[j]))
            if i != j and not d[i][j] > 0:
                return ("positivity", (points[i], points[j]))
    for i in range(k):
        for j in range(k):
            for m in range(k):
                if d[i][m] > d[i][j] + d[j][m]:
                    return ("triangle inequality", (points[i], points[j], points[m]))
    return None


def lind_graph(points: Sequence[str], metric: Sequence[Sequence[Number]] | Mapping) -> LindGraph:
    """Lazy graph whose boundary is isometric to the finite metric sample.

    ``metric`` is a k x k matrix or a mapping ``{(u, w): d}`` /
    ``{u: {w: d}}``.  Distances are converted to fractions.
    """
    points = [str(p) for p in points]
    if isinstance(metric, Mapping):
        mat = [[Fraction(0)] * len(points) for _ in points]
        for i, u in enumerate(points):
            for j, w in enumerate(points):
                if i == j:
                    continue
                if (u, w) in metric:
                    mat[i][j] = metric[(u, w)]
                elif (w, u) in metric:
                    mat[i][j] = metric[(w, u)]
                elif u in metric and w in metric[u]:
                    mat[i][j] = metric[u][w]
                elif w in metric and u in metric[w]:
                    mat[i][j] = metric[w][u]
                else:
                    raise CompletionError(f"no distance given for {u!r}, {w!r}")
        metric = mat
    try:
        exact = tuple(tuple(Fraction(str(x)) if isinstance(x, (str, float)) else Fraction(x) for x in row)
                      for row in metric)
    except (ValueError, TypeError) as exc:
        raise CompletionError(f"bad distance value: {exc}") from None
    bad = check_metric(points, exact)
    if bad is not None:
        axiom, witness = bad
        raise CompletionError(f"not a metric: {axiom} fails at {', '.join(map(str, witness))}")
    if not points:
        raise CompletionError("empty sample")
    return LindGraph(tuple(points), exact)


def lind_distances(lg: LindGraph, depth: int) -> dict[tuple[str, str], Number]:
    """Distances between the bottom vertices of all columns in G_depth."""
    g = lg.truncate(depth).graph
    row = depth + 1
    cols = [u for u in lg.points if lg.vid(row, u) in g]
    out = {}
    for i, u in enumerate(cols):
        dm, _ = _dijkstra(g, [(lg.vid(row, u), 0, None)], targets={lg.vid(row, w) for w in cols[i + 1:]} or None)
        for w in cols[i + 1:]:
            out[(u, w)] = dm[lg.vid(row, w)]
    return out


# -- ends -----------------------------------------------------------------------------


@dataclass(frozen=True)
class EndDecomposition:
    level: int
    mode: str
    separator: tuple[str, ...]  # vertex ids (vertex mode) or edge ids (edge mode)
    components: tuple[tuple[str, ...], ...]
    rays: tuple[tuple[str, ...], ...]  # vertex sequence per component, running outward

    @property
    def count(self) -> int:
        return len(self.components)

    def component_of(self, v: str) -> int:
        for i, c in enumerate(self.components):
            if v in c:
                return i
        return -1


def ends(g: LazyGraph, n: int, mode: str = "vertex") -> EndDecomposition:
    """Growing components of G_n minus the core G_ceil(n/2).

    In vertex mode the core's vertices are deleted, in edge mode its edges.
    A component is kept if it gains vertices in G_{n+1}; each kept component
    gets a ray prefix: a hop-shortest path from the core side to a deepest
    vertex of the component's growth in G_{n+1}.
    """
    if n < 1:
        raise CompletionError("ends needs level n >= 1")
    if mode not in ("vertex", "edge"):
        raise CompletionError(f"mode must be 'vertex' or 'edge', got {mode!r}")
    core = g.truncate((n + 1) // 2).graph
    here = g.truncate(n)
    nxt = g.truncate(n + 1)
    if mode == "vertex":
        sep = tuple(core.vertices)
        comps_n = here.graph.components(removed=sep)
        comps_next = nxt.graph.components(removed=sep)
    else:
        sep = tuple(core.edges)
        comps_n = here.graph.components(removed_edges=sep)
        comps_next = nxt.graph.components(removed_edges=sep)
    index_next = {v: i for i, c in enumerate(comps_next) for v in c}
    kept, rays = [], []
    for c in comps_n:
        grown = comps_next[index_next[c[0]]]
        if len(grown) <= len(c):
            continue
        kept.append(tuple(c))
        rays.append(_ray_prefix(nxt, set(grown), core))
    return EndDecomposition(n, mode, sep, tuple(kept), tuple(rays))


def _ray_prefix(t, comp: set[str], core: WeightedGraph) -> tuple[str, ...]:
    g = t.graph
    starts = sorted((v for v in comp if any(w in core for _, w in g.neighbors(v))),
                    key=lambda v: (t.vertex_level[v], v))
    if not starts:
        starts = sorted(comp, key=lambda v: (t.vertex_level[v], v))
    start = starts[0]
    parent = {start: None}
    order = [start]
    for v in order:
        for _, w in g.neighbors(v):
            if w in comp and w not in parent:
                parent[w] = v
                order.append(w)
    deepest = max(order, key=lambda v: (t.vertex_level[v], -order.index(v)))
    path = []
    v = deepest
    while v is not None:
        path.append(v)
        v = parent[v]
    return tuple(reversed(path))


# -- comb or star ----------------------------------------------------------------------


@dataclass(frozen=True)
class CombOrStar:
    kind: str  # "comb" | "star" | "inconclusive"
    spine: tuple[str, ...] = ()
    center: str | None = None
    paths: tuple[tuple[str, ...], ...] = ()  # teeth (comb) or leaf paths (star)
    budget: int = 0
    cauchy: bool = True
    note: str = ""

    @property
    def size(self) -> int:
        return len(self.paths)


def comb_or_star(g: LazyGraph | WeightedGraph, vseq: Sequence[str], budget: int, k: int = 3) -> CombOrStar:
    """Find a comb or a subdivided star with at least k teeth/leaves through the points of vseq.

    Consecutive points are joined by shortest paths in G_budget; the union is
    pruned to the smallest subtree of a breadth-first spanning tree containing
    all points.  In that tree the star candidate is the vertex separating the
    most points, the comb candidate is the path from the first to the last
    point with one tooth per attachment vertex.  The larger structure wins if
    it reaches k, otherwise the answer is inconclusive.
    """
    lg = FiniteGraph(g) if isinstance(g, WeightedGraph) else g
    t = lg.truncate(budget).graph
    missing = [v for v in vseq if v not in t]
    if missing:
        return CombOrStar("inconclusive", budget=budget, note=f"{missing[0]!r} not emitted by level {budget}")
    pts = list(dict.fromkeys(vseq))
    if len(pts) < 2:
        return CombOrStar("inconclusive", budget=budget, note="need at least two distinct points")
    gaps = [dist(t, a, b).value for a, b in zip(pts, pts[1:])]
    cauchy = all(b <= a or same_value(a, b) for a, b in zip(gaps, gaps[1:]))
    union: set[str] = set()
    for a, b in zip(pts, pts[1:]):
        r = dist(t, a, b)
        if not r.reachable:
            return CombOrStar("inconclusive", budget=budget, cauchy=cauchy, note=f"{a!r} and {b!r} disconnected")
        union.update(r.path)
    h = t.edge_subgraph(union) if union else t.subgraph(pts)
    tree_adj = _bfs_tree(h, pts[0])
    tree_adj = _prune(tree_adj, set(pts))
    # star: vertex whose removal separates the most points
    best_c, best_branches = None, []
    for c in sorted(tree_adj):
        branches = []
        for nb in sorted(tree_adj[c]):
            br = _branch(tree_adj, c, nb)
            hit = next((p for p in pts if p in br), None)
            if hit is not None:
                branches.append(_tree_path(tree_adj, c, hit))
        if len(branches) > len(best_branches):
            best_c, best_branches = c, branches
    spine = _tree_path(tree_adj, pts[0], pts[-1])
    on_spine = set(spine)
    teeth: dict[str, tuple[str, ...]] = {}
    for p in pts:
        path = _path_to_set(tree_adj, p, on_spine)
        teeth.setdefault(path[-1], tuple(reversed(path)))
    teeth_list = tuple(teeth[v] for v in spine if v in teeth)
    if len(teeth_list) >= k and len(teeth_list) >= len(best_branches):
        return CombOrStar("comb", tuple(spine), None, teeth_list, budget, cauchy)
    if len(best_branches) >= k:
        return CombOrStar("star", (), best_c, tuple(tuple(b) for b in best_branches), budget, cauchy)
    return CombOrStar("inconclusive", budget=budget, cauchy=cauchy,
                      note=f"comb with {len(teeth_list)} teeth, star with {len(best_branches)} leaves; need {k}")


def _bfs_tree(h: WeightedGraph, root: str) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {root: set()}
    order = [root]
    for v in order:
        for _, w in h.neighbors(v):
            if w not in adj:
                adj[w] = {v}
                adj[v].add(w)
                order.append(w)
    return adj


def _prune(adj: dict[str, set[str]], keep: set[str]) -> dict[str, set[str]]:
    adj = {v: set(ns) for v, ns in adj.items()}
    leaves = [v for v, ns in adj.items() if len(ns) <= 1 and v not in keep]
    while leaves:
        v = leaves.pop()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1 and w not in keep:
                leaves.append(w)
    return adj


def _branch(adj, center, nb) -> set[str]:
    seen = {center, nb}
    stack = [nb]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    seen.discard(center)
    return seen


def _tree_path(adj, a, b) -> list[str]:
    parent = {a: None}
    stack = [a]
    while stack:
        v = stack.pop()
        if v == b:
            break
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                stack.append(w)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def _path_to_set(adj, a, target: set[str]) -> list[str]:
    parent = {a: None}
    order = [a]
    for v in order:
        if v in target:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                order.append(w)
    raise GraphError("tree is disconnected")


__all__ = [
    "Admissibility", "BoundaryProfile", "Clustering", "CombOrStar", "CompletionError", "DEFAULT_EPS",
    "Decay", "EndDecomposition", "FloydGraph", "LevelProfile", "NstResult", "admissibility",
    "boundary_profile", "check_metric", "cluster_frontier", "comb_or_star", "dfs_tree", "ends",
    "floyd_lengths", "level_gap_length", "lind_distances", "lind_graph", "nst_lengths", "parse_decay",
]
