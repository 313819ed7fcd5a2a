"""Weighted multigraphs, the line-graph functor and graph (de)serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Union

Number = Union[int, float, Fraction]


class GraphError(ValueError):
    """Raised when a graph description violates the WeightedGraph invariants."""


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Number

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, w: str) -> str:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise GraphError(f"vertex {w!r} is not an endpoint of edge {self.id!r}")


def half_sum(a: Number, b: Number) -> Number:
    """Return (a + b) / 2, staying exact for int and Fraction inputs."""
    s = a + b
    if isinstance(s, float):
        return s / 2
    return Fraction(s) / 2


def exact_sum(values: Iterable[Number]) -> Number:
    """Sum that stays exact for rationals and uses fsum once a float shows up."""
    vals = list(values)
    if any(isinstance(x, float) for x in vals):
        return math.fsum(vals)
    total: Number = 0
    for x in vals:
        total += x
    return total


class WeightedGraph:
    """Finite multigraph with strictly positive edge lengths.

    Vertices are string ids.  Edges are stored in insertion order and every
    edge is reachable from both endpoints through the adjacency index; a loop
    appears once in the incidence list of its vertex but counts twice towards
    the degree.

    Instances are immutable; every "modification" returns a new graph.
    """

    __slots__ = ("_vertices", "_vertex_set", "_edges", "_incidence", "name")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge], name: str = ""):
        verts: list[str] = []
        seen: set[str] = set()
        for v in vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
            verts.append(v)
        edge_map: dict[str, Edge] = {}
        incidence: dict[str, list[str]] = {v: [] for v in verts}
        for e in edges:
            if e.id in edge_map:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end in (e.u, e.v):
                if end not in seen:
                    raise GraphError(f"dangling endpoint {end!r} on edge {e.id!r}")
            if isinstance(e.length, bool) or not isinstance(e.length, (int, float, Fraction)):
                raise GraphError(f"edge {e.id!r} has non-numeric length {e.length!r}")
            if not e.length > 0 or (isinstance(e.length, float) and not math.isfinite(e.length)):
                raise GraphError(f"nonpositive length {e.length!r} on edge {e.id!r}")
            edge_map[e.id] = e
            incidence[e.u].append(e.id)
            if not e.is_loop:
                incidence[e.v].append(e.id)
        self._vertices = tuple(verts)
        self._vertex_set = frozenset(verts)
        self._edges = MappingProxyType(edge_map)
        self._incidence = MappingProxyType({v: tuple(sorted(ids)) for v, ids in incidence.items()})
        self.name = name

    # -- basic access -----------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, Edge]:
        return self._edges

    def __contains__(self, v: object) -> bool:
        return v in self._vertex_set

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<WeightedGraph{label} |V|={len(self._vertices)} |E|={len(self._edges)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and dict(self._edges) == dict(other._edges)

    def __hash__(self) -> int:
        return hash((self._vertex_set, frozenset(self._edges.values())))

    def edge(self, eid: str) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def incident(self, v: str) -> tuple[str, ...]:
        """Edge ids incident with ``v``, sorted by id."""
        try:
            return self._incidence[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: str) -> list[tuple[str, str]]:
        """``(edge id, other endpoint)`` pairs in edge-id order."""
        return [(eid, self._edges[eid].other(v)) for eid in self.incident(v)]

    def degree(self, v: str) -> int:
        return sum(2 if self._edges[eid].is_loop else 1 for eid in self.incident(v))

    def length(self, eid: str) -> Number:
        return self.edge(eid).length

    def total_length(self) -> Number:
        return exact_sum(e.length for e in self._edges.values())

    def min_length(self) -> Number | None:
        return min((e.length for e in self._edges.values()), default=None)

    # -- structure ----------------------------------------------------------

    def components(self, removed: Iterable[str] = (), removed_edges: Iterable[str] = ()) -> list[list[str]]:
        """Connected components (vertex lists in graph order) of G minus the given sets."""
        gone = set(removed)
        gone_edges = set(removed_edges)
        comp_of: dict[str, int] = {}
        comps: list[list[str]] = []
        order = {v: i for i, v in enumerate(self._vertices)}
        for s in self._vertices:
            if s in gone or s in comp_of:
                continue
            comp_of[s] = len(comps)
            members = [s]
            stack = [s]
            while stack:
                w = stack.pop()
                for eid, x in self.neighbors(w):
                    if eid in gone_edges or x in gone or x in comp_of:
                        continue
                    comp_of[x] = len(comps)
                    members.append(x)
                    stack.append(x)
            comps.append(sorted(members, key=order.__getitem__))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def subgraph(self, vertices: Iterable[str]) -> "WeightedGraph":
        keep = set(vertices)
        return WeightedGraph(
            [v for v in self._vertices if v in keep],
            [e for e in self._edges.values() if e.u in keep and e.v in keep],
            name=self.name,
        )

    def edge_subgraph(self, edge_ids: Iterable[str]) -> "WeightedGraph":
        ids = set(edge_ids)
        es = [e for e in self._edges.values() if e.id in ids]
        ends = {x for e in es for x in (e.u, e.v)}
        return WeightedGraph([v for v in self._vertices if v in ends], es, name=self.name)

    def with_lengths(self, lengths: Mapping[str, Number]) -> "WeightedGraph":
        """Copy of the graph with the given edges re-weighted."""
        return WeightedGraph(
            self._vertices,
            [Edge(e.id, e.u, e.v, lengths.get(e.id, e.length)) for e in self._edges.values()],
            name=self.name,
        )

    def is_subgraph_of(self, other: "WeightedGraph") -> bool:
        """True if vertices and edges (with identical lengths) all appear in ``other``."""
        if not self._vertex_set <= other._vertex_set:
            return False
        return all(other._edges.get(eid) == e for eid, e in self._edges.items())


# -- construction -------------------------------------------------------------


def _parse_length(raw: Any, exact: Any = None) -> Number:
    if exact is not None:
        return Fraction(str(exact))
    if isinstance(raw, str):
        return Fraction(raw)
    if isinstance(raw, float) and raw.is_integer():
        return int(raw)
    return raw


def build_graph(desc: Any, name: str = "") -> WeightedGraph:
    """Build a WeightedGraph from a JSON-style mapping or from plain sequences.

    Accepted forms::

        {"vertices": [{"id": "a"}, ...], "edges": [{"id": "e", "u": "a", "v": "b", "len": 1.0}]}
        {"vertices": ["a", "b"], "edges": [("e", "a", "b", 1), ("a", "b", 2)]}

    A bare list of edges is also accepted; its vertices are the endpoints in
    order of first appearance.  Edges given as ``(u, v, length)`` triples
    receive ids ``e0, e1, ...``.  String lengths such as ``"1/3"`` are parsed
    as fractions.
    """
    if isinstance(desc, WeightedGraph):
        return desc
    if isinstance(desc, (list, tuple)):
        seen: dict[str, None] = {}
        for item in desc:
            for end in (item[-3], item[-2]):
                seen.setdefault(end, None)
        desc = {"vertices": list(seen), "edges": desc}
    if not isinstance(desc, Mapping):
        raise GraphError("graph description must be a mapping with 'vertices' and 'edges'")
    try:
        raw_vertices = desc["vertices"]
        raw_edges = desc["edges"]
    except KeyError as exc:
        raise GraphError(f"graph description lacks {exc.args[0]!r}") from None
    vertices = [v["id"] if isinstance(v, Mapping) else v for v in raw_vertices]
    for v in vertices:
        if not isinstance(v, str):
            raise GraphError(f"vertex id {v!r} is not a string")
    edges = []
    for i, item in enumerate(raw_edges):
        if isinstance(item, Mapping):
            try:
                eid, u, v = item["id"], item["u"], item["v"]
                length = _parse_length(item["len"], item.get("len_exact"))
            except KeyError as exc:
                raise GraphError(f"edge #{i} lacks field {exc.args[0]!r}") from None
        elif len(item) == 4:
            eid, u, v, length = item
            length = _parse_length(length)
        elif len(item) == 3:
            u, v, length = item
            eid = f"e{i}"
            length = _parse_length(length)
        else:
            raise GraphError(f"cannot interpret edge #{i}: {item!r}")
        edges.append(Edge(str(eid), u, v, length))
    return WeightedGraph(vertices, edges, name=name)


# -- line graph -----------------------------------------------------------------


def line_edge_id(e: str, d: str, at: str) -> str:
    a, b = sorted((e, d))
    return f"{a}|{b}@{at}"


def line_graph(g: WeightedGraph) -> WeightedGraph:
    """Line graph L(g) with lengths (l(e) + l(d)) / 2 on the edge joining e and d.

    One line-graph edge is created per shared endpoint, so parallel edges of g
    are joined twice.  A loop shares its vertex with every other edge there
    but never becomes adjacent to itself.
    """
    if not g.edges:
        raise GraphError("line graph of an edgeless graph is empty")
    new_edges = []
    for v in g.vertices:
        inc = g.incident(v)
        for i, e in enumerate(inc):
            for d in inc[i + 1:]:
                new_edges.append(Edge(line_edge_id(e, d, v), e, d, half_sum(g.length(e), g.length(d))))
    return WeightedGraph(list(g.edges), new_edges, name=f"L({g.name})" if g.name else "L")


# -- serialization --------------------------------------------------------------


def _length_json(x: Number) -> dict[str, Any]:
    out: dict[str, Any] = {"len": float(x)}
    if isinstance(x, Fraction) and Fraction(float(x)) != x:
        out["len_exact"] = f"{x.numerator}/{x.denominator}"
    elif isinstance(x, int) and not isinstance(x, bool) and float(x) != x:
        out["len_exact"] = str(x)
    return out


def to_json_dict(g: WeightedGraph) -> dict[str, Any]:
    """Graph JSON.  Lengths that a double cannot hold exactly get a ``len_exact`` string."""
    return {
        "vertices": [{"id": v} for v in g.vertices],
        "edges": [{"id": e.id, "u": e.u, "v": e.v, **_length_json(e.length)} for e in g.edges.values()],
    }


def dumps(g: WeightedGraph) -> str:
    return json.dumps(to_json_dict(g), indent=1)


def loads(text: str, name: str = "") -> WeightedGraph:
    return build_graph(json.loads(text), name=name)


def to_dot(g: WeightedGraph) -> str:
    lines = [f"graph {json.dumps(g.name or 'G')} {{"]
    for v in g.vertices:
        lines.append(f"  {json.dumps(v)};")
    for e in g.edges.values():
        lines.append(f"  {json.dumps(e.u)} -- {json.dumps(e.v)} [id={json.dumps(e.id)}, len={float(e.length)!r}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cycle_order(g: WeightedGraph, edge_ids: Iterable[str]) -> tuple[list[str], list[str]]:
    """Cyclic order of a simple cycle given by its edge set.

    Returns ``(vertices, edges)`` with ``edges[i]`` joining ``vertices[i]`` and
    ``vertices[(i + 1) % k]``.  Raises GraphError if the edges do not form a
    single simple cycle (loops and pairs of parallel edges count as cycles).
    """
    ids = sorted(set(edge_ids))
    if not ids:
        raise GraphError("empty edge set is not a cycle")
    es = [g.edge(e) for e in ids]
    if len(es) == 1:
        if not es[0].is_loop:
            raise GraphError(f"edge {es[0].id!r} alone is not a cycle")
        return [es[0].u], [es[0].id]
    inc: dict[str, list[str]] = {}
    for e in es:
        if e.is_loop:
            raise GraphError(f"loop {e.id!r} cannot lie on a longer cycle")
        inc.setdefault(e.u, []).append(e.id)
        inc.setdefault(e.v, []).append(e.id)
    for v, lst in inc.items():
        if len(lst) != 2:
            raise GraphError(f"not a cycle: vertex {v!r} has degree {len(lst)} in the edge set")
    start = min(inc)
    verts, order = [start], []
    prev_edge = None
    cur = start
    while True:
        a, b = inc[cur]
        nxt = a if a != prev_edge else b
        if prev_edge is None:
            nxt = min(a, b)
        order.append(nxt)
        cur = g.edge(nxt).other(cur)
        prev_edge = nxt
        if cur == start:
            break
        verts.append(cur)
    if len(order) != len(es):
        raise GraphError("not a cycle: edge set is disconnected")
    return verts, order
