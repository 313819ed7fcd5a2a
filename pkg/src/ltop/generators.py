"""Lazily generated infinite graphs exposed through finite truncations.

Every generator emits its ideal (infinite) graph level by level.  ``truncate(n)``
returns the union of levels ``0..n`` together with the frontier: the vertices
of ``G_n`` that are incident with an edge first emitted at level ``n + 1``.
Edge lengths never change once emitted, and ids are deterministic strings.

Generators are addressed by strings ``name?param=value&...``; see
:func:`parse_generator` and :data:`CATALOG`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, ClassVar, Iterable, Mapping
from urllib.parse import parse_qsl

from .graph import Edge, GraphError, Number, WeightedGraph, exact_sum


class GeneratorError(ValueError):
    """Unknown generator name or bad generator parameters."""


@dataclass(frozen=True)
class Level:
    """What a generator adds at one level: new vertices and ``(id, u, v, length, kind)`` edges."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str, Number, str], ...]


@dataclass(frozen=True)
class Truncation:
    level: int
    graph: WeightedGraph
    frontier: tuple[str, ...]
    vertex_level: Mapping[str, int] = field(repr=False)
    edge_level: Mapping[str, int] = field(repr=False)
    edge_kind: Mapping[str, str] = field(repr=False)


@dataclass(frozen=True)
class LengthReport:
    """Total length of a graph or of a lazy graph's exhaustion."""

    total: Number
    partial_sums: tuple[Number, ...]
    verdict: str  # "converging" | "diverging" | "unknown"
    declared: Number | None = None


class LazyGraph:
    """Base class: subclasses are frozen dataclasses implementing :meth:`emit`."""

    name: ClassVar[str] = ""
    doc: ClassVar[str] = ""
    param_docs: ClassVar[dict[str, str]] = {}
    locally_finite: ClassVar[bool] = True

    # -- generator protocol ---------------------------------------------------

    def emit(self, n: int) -> Level:
        raise NotImplementedError

    @property
    def max_level(self) -> int | None:
        """Last level that emits anything, or None for an infinite graph."""
        return None

    def declared_totals(self) -> dict[str, Number | None]:
        """Total length per edge kind of the ideal graph; ``math.inf`` if divergent, None if unknown."""
        return {"edge": None}

    # -- derived API ----------------------------------------------------------

    def params(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}  # type: ignore[arg-type]

    def spec_string(self) -> str:
        ps = "&".join(f"{k}={_fmt_param(v)}" for k, v in self.params().items())
        return f"{self.name}?{ps}" if ps else self.name

    def declared_total(self) -> Number | None:
        vals = list(self.declared_totals().values())
        if any(v is None for v in vals):
            return None
        if any(v == math.inf for v in vals):
            return math.inf
        return exact_sum(vals)

    def level(self, n: int) -> Level:
        if n < 0:
            raise GeneratorError("levels are nonnegative")
        if self.max_level is not None and n > self.max_level:
            return Level((), ())
        return _cached_level(self, n)

    def truncate(self, n: int) -> Truncation:
        if n < 0:
            raise GeneratorError("truncation level must be >= 0")
        return _cached_truncation(self, n)

    def emission_log(self, n: int) -> list[tuple[int, str, str, Number]]:
        """``(level, edge id, kind, length)`` for every edge emitted up to level ``n``."""
        return [(k, eid, kind, length) for k in range(n + 1) for eid, _, _, length, kind in self.level(k).edges]

    def incident_length_infimum(self, v: str) -> Number | None:
        """Infimum of the lengths of all edges at ``v`` in the ideal graph.

        For locally finite generators every edge at ``v`` is emitted by the level
        after ``v`` appears, so the value is read off a truncation.
        """
        if not self.locally_finite:
            return None
        lvl = self._vertex_level(v)
        t = self.truncate(lvl + 1)
        return min((t.graph.length(e) for e in t.graph.incident(v)), default=math.inf)

    def _vertex_level(self, v: str, search_limit: int = 64) -> int:
        for k in range(search_limit):
            if v in self.level(k).vertices:
                return k
            if self.max_level is not None and k >= self.max_level:
                break
        raise GraphError(f"vertex {v!r} not emitted within {search_limit} levels")


def _fmt_param(v: Any) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return ",".join(map(str, v))
    return str(v)


@lru_cache(maxsize=4096)
def _cached_level(g: LazyGraph, n: int) -> Level:
    return g.emit(n)


@lru_cache(maxsize=256)
def _cached_truncation(g: LazyGraph, n: int) -> Truncation:
    vertices: list[str] = []
    edges: list[Edge] = []
    vlevel: dict[str, int] = {}
    elevel: dict[str, int] = {}
    ekind: dict[str, str] = {}
    top = n if g.max_level is None else min(n, g.max_level)
    for k in range(top + 1):
        lvl = g.level(k)
        for v in lvl.vertices:
            vlevel[v] = k
            vertices.append(v)
        for eid, u, v, length, kind in lvl.edges:
            elevel[eid] = k
            ekind[eid] = kind
            edges.append(Edge(eid, u, v, length))
    graph = WeightedGraph(vertices, edges, name=f"{g.spec_string()}@{n}")
    frontier: list[str] = []
    if g.max_level is None or n < g.max_level:
        touched = set()
        for _, u, v, _, _ in g.level(n + 1).edges:
            touched.add(u)
            touched.add(v)
        frontier = [v for v in vertices if v in touched]
    return Truncation(n, graph, tuple(frontier), vlevel, elevel, ekind)


def total_length(g: WeightedGraph | LazyGraph, levels: int | None = None) -> LengthReport:
    """Exact total length of a finite graph, or partial sums per level of a lazy graph.

    The verdict for a lazy graph comes from its declared length schedule.
    """
    if isinstance(g, WeightedGraph):
        t = g.total_length()
        return LengthReport(t, (t,), "converging", t)
    n = 8 if levels is None else levels
    partial: list[Number] = []
    running: Number = 0
    for k in range(n + 1):
        running = exact_sum([running] + [e[3] for e in g.level(k).edges])
        partial.append(running)
    declared = g.declared_total()
    if g.max_level is not None:
        verdict = "converging"
    elif declared is None:
        verdict = "unknown"
    elif declared == math.inf:
        verdict = "diverging"
    else:
        verdict = "converging"
    return LengthReport(partial[-1], tuple(partial), verdict, declared)


# -- helpers ----------------------------------------------------------------------


def _as_fraction(x: Any) -> Fraction:
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise GeneratorError(f"not a rational number: {x!r}") from None


def _positive(name: str, x: Fraction) -> Fraction:
    if x <= 0:
        raise GeneratorError(f"parameter {name} must be positive, got {x}")
    return x


# -- concrete generators --------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGraph(LazyGraph):
    """A finite graph seen as a lazy graph that is complete at level 0."""

    graph: WeightedGraph

    name: ClassVar[str] = "finite"
    doc: ClassVar[str] = "wraps a finite WeightedGraph; level 0 is the whole graph"

    @property
    def max_level(self) -> int:
        return 0

    def emit(self, n: int) -> Level:
        g = self.graph
        return Level(g.vertices, tuple((e.id, e.u, e.v, e.length, "edge") for e in g.edges.values()))

    def declared_totals(self):
        return {"edge": self.graph.total_length()}

    def spec_string(self) -> str:
        return f"finite:{self.graph.name or id(self.graph)}"


@dataclass(frozen=True)
class Ray(LazyGraph):
    """Ray r0 r1 r2 ...; level n adds r_n and the edge r_{n-1} r_n of length ratio^n."""

    ratio: Fraction = Fraction(1)

    def __post_init__(self):
        _positive("ratio", self.ratio)

    name: ClassVar[str] = "ray"
    doc: ClassVar[str] = "one-way infinite path"
    param_docs: ClassVar[dict[str, str]] = {"ratio": "edge emitted at level n has length ratio**n (default 1)"}

    def emit(self, n):
        if n == 0:
            return Level(("r0",), ())
        return Level((f"r{n}",), ((f"r{n-1}-r{n}", f"r{n-1}", f"r{n}", self.ratio**n, "edge"),))

    def declared_totals(self):
        r = self.ratio
        return {"edge": r / (1 - r) if r < 1 else math.inf}


@dataclass(frozen=True)
class DoubleRay(LazyGraph):
    """Double ray ... l2 l1 r0 r1 r2 ...; level n adds r_n and l_n."""

    ratio: Fraction = Fraction(1)

    def __post_init__(self):
        _positive("ratio", self.ratio)

    name: ClassVar[str] = "double-ray"
    doc: ClassVar[str] = "two-way infinite path (two ends)"
    param_docs: ClassVar[dict[str, str]] = {"ratio": "edges emitted at level n have length ratio**n"}

    @staticmethod
    def vertex(k: int) -> str:
        return "r0" if k == 0 else (f"r{k}" if k > 0 else f"l{-k}")

    def emit(self, n):
        if n == 0:
            return Level(("r0",), ())
        r = self.ratio**n
        edges = []
        for sign in (1, -1):
            a, b = self.vertex(sign * (n - 1)), self.vertex(sign * n)
            edges.append((f"{a}-{b}", a, b, r, "edge"))
        return Level((self.vertex(n), self.vertex(-n)), tuple(edges))

    def declared_totals(self):
        r = self.ratio
        return {"edge": 2 * r / (1 - r) if r < 1 else math.inf}


@dataclass(frozen=True)
class LadderStrip(LazyGraph):
    """One-ended ladder.  Level 0 is the rung a0 b0; level n adds rung a_n b_n and the rails to it.

    Every edge emitted at level n has length ratio**n, so ratio=1/2 gives the
    summable halving ladder.
    """

    ratio: Fraction = Fraction(1)

    def __post_init__(self):
        _positive("ratio", self.ratio)

    name: ClassVar[str] = "ladder-strip"
    doc: ClassVar[str] = "infinite ladder; level n adds one rung"
    param_docs: ClassVar[dict[str, str]] = {"ratio": "edges emitted at level n have length ratio**n"}

    def emit(self, n):
        r = self.ratio**n
        rung = (f"rung{n}", f"a{n}", f"b{n}", r, "rung")
        if n == 0:
            return Level(("a0", "b0"), (rung,))
        return Level(
            (f"a{n}", f"b{n}"),
            (
                (f"a{n-1}-a{n}", f"a{n-1}", f"a{n}", r, "rail"),
                (f"b{n-1}-b{n}", f"b{n-1}", f"b{n}", r, "rail"),
                rung,
            ),
        )

    def declared_totals(self):
        r = self.ratio
        if r >= 1:
            return {"rung": math.inf, "rail": math.inf}
        return {"rung": 1 / (1 - r), "rail": 2 * r / (1 - r)}


@dataclass(frozen=True)
class Grid(LazyGraph):
    """Quarter-plane grid on N x N; level n adds the vertices with max(i, j) = n."""

    ratio: Fraction = Fraction(1)

    def __post_init__(self):
        _positive("ratio", self.ratio)

    name: ClassVar[str] = "grid"
    doc: ClassVar[str] = "quarter-plane grid (one end)"
    param_docs: ClassVar[dict[str, str]] = {"ratio": "edges emitted at level n have length ratio**n"}

    def emit(self, n):
        if n == 0:
            return Level(("g0.0",), ())
        r = self.ratio**n
        new = [(n, j) for j in range(n + 1)] + [(i, n) for i in range(n)]
        verts = tuple(f"g{i}.{j}" for i, j in new)
        edges = []
        for i, j in new:
            for a, b in ((i - 1, j), (i, j - 1)):
                if a < 0 or b < 0:
                    continue
                edges.append((f"g{a}.{b}-g{i}.{j}", f"g{a}.{b}", f"g{i}.{j}", r, "edge"))
        return Level(verts, tuple(sorted(edges)))

    def declared_totals(self):
        r = self.ratio
        # level n >= 1 emits 4n edges
        return {"edge": 4 * r / (1 - r) ** 2 if r < 1 else math.inf}


@dataclass(frozen=True)
class BinaryTree(LazyGraph):
    """Rooted binary tree; level n adds the 2^n vertices at depth n."""

    ratio: Fraction = Fraction(1)

    def __post_init__(self):
        _positive("ratio", self.ratio)

    name: ClassVar[str] = "binary-tree"
    doc: ClassVar[str] = "infinite binary tree (continuum many ends)"
    param_docs: ClassVar[dict[str, str]] = {"ratio": "edges emitted at level n have length ratio**n"}

    def emit(self, n):
        if n == 0:
            return Level(("t",), ())
        r = self.ratio**n
        verts, edges = [], []
        for k in range(2**n):
            w = format(k, f"0{n}b")
            parent = "t" + w[:-1]
            verts.append("t" + w)
            edges.append((f"{parent}-t{w}", parent, "t" + w, r, "edge"))
        return Level(tuple(verts), tuple(edges))

    def declared_totals(self):
        r = self.ratio
        return {"edge": 2 * r / (1 - 2 * r) if 2 * r < 1 else math.inf}


@dataclass(frozen=True)
class HyperbolicStrip(LazyGraph):
    """Hyperbolic strip between an upper and a lower horizontal ray.

    Level i is the perpendicular path ``h{i}.0 - h{i}.1 - ... - h{i}.{2^i}`` of
    2^i unit edges (ids ``p{i}.{j}``); ``h{i}.0`` lies on the upper ray and
    ``h{i}.{2^i}`` on the lower one.  Each ``h{i}.{j}`` with i >= 1 is joined to
    ``h{i-1}.{j // 2}`` by a horizontal edge ``q{i}.{j}``, so the rays
    ``h{i}.{j}, h{i+1}.{2j}, ...`` run horizontally and every vertex of level
    i-1 above the lower ray has two horizontal successors.
    """

    name: ClassVar[str] = "hyperbolic-strip"
    doc: ClassVar[str] = "level i is a perpendicular path of 2^i unit edges between two horizontal rays"

    def emit(self, n):
        verts = tuple(f"h{n}.{j}" for j in range(2**n + 1))
        edges = [(f"p{n}.{j}", f"h{n}.{j}", f"h{n}.{j+1}", 1, "perpendicular") for j in range(2**n)]
        if n > 0:
            edges += [(f"q{n}.{j}", f"h{n-1}.{j // 2}", f"h{n}.{j}", 1, "horizontal") for j in range(2**n + 1)]
        return Level(verts, tuple(edges))

    def declared_totals(self):
        return {"perpendicular": math.inf, "horizontal": math.inf}


@dataclass(frozen=True)
class Fan(LazyGraph):
    """Fan: a ray z = v0, v1, v2, ... and two hubs x, y adjacent to every ray vertex.

    ``lengths=shrink``: the legs x v_n and y v_n have length 2^-n and the ray
    edge v_{n-1} v_n has length 2^(2-n), so the total length is finite and
    d(x, y) = 0 in the completion.  ``lengths=unit``: every edge has length 1.
    Level 0 holds x, y, z and the legs to z; level n adds v_n and its three edges.
    """

    lengths: str = "shrink"

    name: ClassVar[str] = "fan"
    doc: ClassVar[str] = "non-locally-finite fan with hubs x and y over a ray starting at z"
    param_docs: ClassVar[dict[str, str]] = {"lengths": "shrink (summable, d(x,y)=0) or unit"}
    locally_finite: ClassVar[bool] = False

    def __post_init__(self):
        if self.lengths not in ("shrink", "unit"):
            raise GeneratorError("fan lengths must be 'shrink' or 'unit'")

    def _leg(self, n: int) -> Number:
        return Fraction(1, 2**n) if self.lengths == "shrink" else 1

    def _rail(self, n: int) -> Number:
        return Fraction(4, 2**n) if self.lengths == "shrink" else 1

    @staticmethod
    def ray_vertex(n: int) -> str:
        return "z" if n == 0 else f"v{n}"

    def emit(self, n):
        v = self.ray_vertex(n)
        edges = [(f"x-{v}", "x", v, self._leg(n), "leg"), (f"y-{v}", "y", v, self._leg(n), "leg")]
        if n == 0:
            return Level(("x", "y", "z"), tuple(edges))
        prev = self.ray_vertex(n - 1)
        edges.append((f"{prev}-{v}", prev, v, self._rail(n), "ray"))
        return Level((v,), tuple(edges))

    def declared_totals(self):
        if self.lengths == "unit":
            return {"leg": math.inf, "ray": math.inf}
        return {"leg": Fraction(4), "ray": Fraction(4)}

    def incident_length_infimum(self, v):
        if v in ("x", "y"):
            return 0 if self.lengths == "shrink" else 1
        lvl = self._vertex_level(v)
        t = self.truncate(lvl + 1)
        return min(t.graph.length(e) for e in t.graph.incident(v))


def _pos_label(j: int, n: int) -> str:
    """Reduced label for the dyadic position j / 2^n."""
    f = Fraction(j, 2**n)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Antares(LazyGraph):
    """Graph whose thick double rays and ends form the wild circle.

    Positions are the dyadic rationals of [0, 1].  A position x = j/2^i with j
    odd is born at level i; it carries a thick double ray D_x consisting of a
    left arm ``a{x}@i, a{x}@(i+1), ...``, a right arm ``b{x}@i, ...`` and the
    top edge ``a{x}@i b{x}@i``.  Position 0 only has a right arm and position 1
    only a left arm; together with the level-0 top edge they form the outer
    double ray L.  At level n the thin path runs through all positions
    k/2^n: thin edge ``t{n}:{k}`` joins ``b{k/2^n}@n`` to ``a{(k+1)/2^n}@n``
    and has length c 2^-n.

    Thick lengths: L gets 2s/3 (top edge s/3, arm edge at level k has length
    (s/6) 2^-k); a double ray born at level i gets B_i = (s/3) 2^(1-2i)
    (top B_i/2, arm edge at level k > i has length (B_i/4) 2^-(k-i)).  All
    thick edges together have length exactly s; thin edges sum to c per level.
    """

    c: Fraction = Fraction(1)
    s: Fraction = Fraction(3, 2)

    name: ClassVar[str] = "antares"
    doc: ClassVar[str] = "wild-circle graph with thin level lengths c*2^-i and thick total s"
    param_docs: ClassVar[dict[str, str]] = {
        "c": "thin edges at level i have length c*2^-i (default 1)",
        "s": "total length of all thick edges (default 3/2)",
    }

    def __post_init__(self):
        _positive("c", self.c)
        _positive("s", self.s)

    def budget(self, born: int) -> Fraction:
        """Total thick length of the double ray born at level ``born`` (0 means L)."""
        if born == 0:
            return 2 * self.s / 3
        return self.s / 3 * Fraction(2, 4**born)

    def top_length(self, born: int) -> Fraction:
        if born == 0:
            return self.s / 3
        return self.budget(born) / 2

    def arm_length(self, born: int, k: int) -> Fraction:
        """Length of the arm edge from level k-1 to k of a double ray born at ``born``."""
        if born == 0:
            return self.s / 6 / 2**k
        return self.budget(born) / 4 / 2 ** (k - born)

    @staticmethod
    def born(label: str) -> int:
        den = Fraction(label).denominator
        return 0 if den == 1 else den.bit_length() - 1

    @staticmethod
    def vid(side: str, label: str, k: int) -> str:
        return f"{side}{label}@{k}"

    def _sides(self, label: str) -> tuple[str, ...]:
        if label == "0/1":
            return ("b",)
        if label == "1/1":
            return ("a",)
        return ("a", "b")

    def emit(self, n):
        verts: list[str] = []
        edges: list[tuple[str, str, str, Number, str]] = []
        labels = [_pos_label(j, n) for j in range(2**n + 1)]
        for label in labels:
            born = self.born(label)
            for side in self._sides(label):
                verts.append(self.vid(side, label, n))
                if born < n:
                    edges.append((f"A{side}{label}@{n}", self.vid(side, label, n - 1), self.vid(side, label, n),
                                  self.arm_length(born, n), "thick"))
            if born == n and n > 0:
                edges.append((f"T{label}", self.vid("a", label, n), self.vid("b", label, n), self.top_length(n), "thick"))
        if n == 0:
            edges.append(("T0/1", self.vid("b", "0/1", 0), self.vid("a", "1/1", 0), self.top_length(0), "thick"))
        for k in range(2**n):
            edges.append((f"t{n}:{k}", self.vid("b", labels[k], n), self.vid("a", labels[k + 1], n),
                          self.c / 2**n, "thin"))
        return Level(tuple(verts), tuple(edges))

    def declared_totals(self):
        return {"thick": self.s, "thin": math.inf}

    def wild_circle_walk(self, n: int) -> list[str]:
        """Vertices of G_n met when running once around the wild circle.

        Starts at the top of L, runs down L's left arm, then through every
        double ray born at level <= n in left-to-right order (down its left
        arm's sampled part and back up, across the top edge, down the right
        arm), and finally up L's right arm.  The walk is cyclic.
        """
        walk = [self.vid("b", "0/1", k) for k in range(n + 1)]
        for j in range(1, 2**n):
            label = _pos_label(j, n)
            born = self.born(label)
            walk += [self.vid("a", label, k) for k in range(n, born - 1, -1)]
            walk += [self.vid("b", label, k) for k in range(born, n + 1)]
        walk += [self.vid("a", "1/1", k) for k in range(n, -1, -1)]
        return walk


@dataclass(frozen=True)
class LindGraph(LazyGraph):
    """Graph whose boundary is isometric to a (finite) metric sample.

    Column u carries vertices ``z{m}:{u}`` for rows m = 1, 2, ...; the vertical
    edge ``V{m}:{u}`` from row m to m+1 has length 2^-m.  At row m the first m
    sample points are pairwise joined by ``H{m}:{u}~{w}`` of length d(u, w).
    Level n holds rows 1..n+1 of the first n+1 columns.
    """

    points: tuple[str, ...]
    metric: tuple[tuple[Fraction, ...], ...]

    name: ClassVar[str] = "lind"
    doc: ClassVar[str] = "columns of rays over a metric sample; boundary isometric to the sample"

    def spec_string(self) -> str:
        return "lind:" + ",".join(self.points)

    def params(self):
        return {"points": self.points}

    def distance(self, u: str, w: str) -> Fraction:
        i, j = self.points.index(u), self.points.index(w)
        return self.metric[i][j]

    @staticmethod
    def vid(m: int, u: str) -> str:
        return f"z{m}:{u}"

    def emit(self, n):
        k = len(self.points)
        row = n + 1
        verts: list[str] = []
        edges: list[tuple[str, str, str, Number, str]] = []
        cols = self.points[: min(row, k)]
        for u in self.points[: min(n, k)]:
            verts.append(self.vid(row, u))
            edges.append((f"V{row-1}:{u}", self.vid(row - 1, u), self.vid(row, u), Fraction(1, 2 ** (row - 1)), "vertical"))
        if row <= k:
            u = self.points[row - 1]
            for m in range(1, row + 1):
                verts.append(self.vid(m, u))
                if m > 1:
                    edges.append((f"V{m-1}:{u}", self.vid(m - 1, u), self.vid(m, u), Fraction(1, 2 ** (m - 1)), "vertical"))
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                u, w = cols[a], cols[b]
                edges.append((f"H{row}:{u}~{w}", self.vid(row, u), self.vid(row, w), self.metric[a][b], "horizontal"))
        return Level(tuple(verts), tuple(edges))

    def declared_totals(self):
        return {"vertical": Fraction(len(self.points)) if self.points else Fraction(0),
                "horizontal": math.inf if len(self.points) > 1 else Fraction(0)}


# -- catalog -----------------------------------------------------------------------

CATALOG: dict[str, type[LazyGraph]] = {
    cls.name: cls for cls in (LadderStrip, Ray, DoubleRay, HyperbolicStrip, Antares, Fan, Grid, BinaryTree)
}

UNAVAILABLE: dict[str, str] = {
    "monster": "no numeric edge lengths are available for this family; not generated",
}

_CONVERTERS: dict[str, Callable[[str], Any]] = {
    "ratio": _as_fraction,
    "c": _as_fraction,
    "s": _as_fraction,
    "lengths": str,
}


def parse_generator(text: str) -> LazyGraph:
    """Instantiate a generator from ``name?param=value&...``."""
    name, _, query = text.partition("?")
    name = name.strip()
    if name in UNAVAILABLE:
        raise GeneratorError(f"generator {name!r} is unavailable: {UNAVAILABLE[name]}")
    try:
        cls = CATALOG[name]
    except KeyError:
        raise GeneratorError(f"unknown generator {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    allowed = {f.name for f in fields(cls)}  # type: ignore[arg-type]
    kwargs: dict[str, Any] = {}
    for key, value in parse_qsl(query, keep_blank_values=True, strict_parsing=bool(query)):
        if key not in allowed:
            raise GeneratorError(f"generator {name!r} has no parameter {key!r}")
        kwargs[key] = _CONVERTERS.get(key, str)(value)
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise GeneratorError(str(exc)) from None


def catalog_listing() -> list[dict[str, Any]]:
    out = []
    for name, cls in sorted(CATALOG.items()):
        out.append({"name": name, "doc": cls.doc, "params": dict(cls.param_docs),
                    "locally_finite": cls.locally_finite, "available": True})
    for name, why in sorted(UNAVAILABLE.items()):
        out.append({"name": name, "doc": why, "params": {}, "available": False})
    return out


def bfs_hops(g: WeightedGraph, source: str) -> dict[str, int]:
    """Unweighted hop distance from ``source`` to every reachable vertex."""
    hops = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for _, w in g.neighbors(v):
            if w not in hops:
                hops[w] = hops[v] + 1
                queue.append(w)
    return hops


def iter_levels(g: LazyGraph, levels: Iterable[int]) -> Iterable[Truncation]:
    for n in levels:
        yield g.truncate(n)
