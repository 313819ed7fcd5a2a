"""Cycle space over GF(2) for finite graphs.

Elements are edge sets in which every vertex has even degree.  Vectors are
stored as Python ints (bit i = i-th edge in sorted id order) when ranks are
computed; everywhere else they are frozensets of edge ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .graph import GraphError, Number, WeightedGraph, cycle_order, exact_sum
from .metric import is_geodetic_cycle


class CycleSpaceError(ValueError):
    pass


def _degrees(g: WeightedGraph, edges: Iterable[str]) -> Counter:
    deg: Counter = Counter()
    for eid in edges:
        e = g.edge(eid)
        deg[e.u] += 1
        deg[e.v] += 1
    return deg


def odd_vertices(g: WeightedGraph, edges: Iterable[str]) -> list[str]:
    deg = _degrees(g, edges)
    return sorted(v for v, d in deg.items() if d % 2)


@dataclass(frozen=True)
class CycleSpaceElement:
    """An even edge set of ``graph`` together with its total length."""

    graph: WeightedGraph = field(repr=False, compare=False)
    edges: frozenset[str]

    def __post_init__(self):
        for eid in self.edges:
            self.graph.edge(eid)
        odd = odd_vertices(self.graph, self.edges)
        if odd:
            raise CycleSpaceError(f"vertex {odd[0]!r} has odd degree in the edge set")

    @classmethod
    def of(cls, g: WeightedGraph, edges: Iterable[str]) -> "CycleSpaceElement":
        return cls(g, frozenset(edges))

    @property
    def length(self) -> Number:
        return exact_sum(self.graph.length(e) for e in sorted(self.edges))

    def __add__(self, other: "CycleSpaceElement") -> "CycleSpaceElement":
        return CycleSpaceElement(self.graph, self.edges ^ other.edges)

    def __bool__(self) -> bool:
        return bool(self.edges)

    def is_circuit(self) -> bool:
        if not self.edges:
            return False
        try:
            cycle_order(self.graph, self.edges)
        except GraphError:
            return False
        return True

    def sorted_edges(self) -> list[str]:
        return sorted(self.edges)


def bitset(index: dict[str, int], edges: Iterable[str]) -> int:
    out = 0
    for e in edges:
        out |= 1 << index[e]
    return out


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of int bit vectors (xor basis keyed by leading bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def edge_index(g: WeightedGraph) -> dict[str, int]:
    return {eid: i for i, eid in enumerate(sorted(g.edges))}


def rank_of(g: WeightedGraph, sets: Iterable[Iterable[str]]) -> int:
    idx = edge_index(g)
    return gf2_rank(bitset(idx, s) for s in sets)


def cycle_space_dimension(g: WeightedGraph) -> int:
    return len(g.edges) - len(g.vertices) + len(g.components())


def cycle_basis(g: WeightedGraph) -> list[CycleSpaceElement]:
    """Fundamental cycles of a breadth-first spanning forest (edges scanned in id order)."""
    parent: dict[str, tuple[str | None, str | None]] = {}
    depth: dict[str, int] = {}
    tree: set[str] = set()
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = (None, None)
        depth[root] = 0
        queue = [root]
        for v in queue:
            for eid, w in g.neighbors(v):
                if w not in parent:
                    parent[w] = (v, eid)
                    depth[w] = depth[v] + 1
                    tree.add(eid)
                    queue.append(w)

    def tree_path(a: str, b: str) -> list[str]:
        out = []
        while a != b:
            if depth[a] >= depth[b]:
                a, eid = parent[a]
            else:
                b, eid = parent[b]
            out.append(eid)
        return out

    basis = []
    for eid in sorted(g.edges):
        if eid in tree:
            continue
        e = g.edge(eid)
        basis.append(CycleSpaceElement.of(g, [eid, *tree_path(e.u, e.v)]))
    return basis


# -- families and sums --------------------------------------------------------------


@dataclass(frozen=True)
class CircuitFamily:
    graph: WeightedGraph = field(repr=False, compare=False)
    circuits: tuple[frozenset[str], ...]

    def __post_init__(self):
        for i, c in enumerate(self.circuits):
            if not CycleSpaceElement(self.graph, c).is_circuit():
                raise CycleSpaceError(f"member #{i} is not a circuit")

    def __len__(self) -> int:
        return len(self.circuits)

    def __iter__(self) -> Iterator[frozenset[str]]:
        return iter(self.circuits)

    @property
    def lengths(self) -> tuple[Number, ...]:
        return tuple(exact_sum(self.graph.length(e) for e in sorted(c)) for c in self.circuits)

    @property
    def total_length(self) -> Number:
        return exact_sum(self.lengths)

    def occurrences(self) -> Counter:
        """How often each edge occurs across the members."""
        return Counter(e for c in self.circuits for e in c)

    def pairwise_disjoint(self) -> bool:
        return all(n == 1 for n in self.occurrences().values())


@dataclass(frozen=True)
class ThinSum:
    element: CycleSpaceElement
    total_length: Number
    max_occurrence: int
    thin: bool = True  # every finite family is thin


def thin_sum(fam: CircuitFamily) -> ThinSum:
    """Edges lying in an odd number of members, plus the family's total length."""
    odd = frozenset(e for e, k in fam.occurrences().items() if k % 2)
    occ = fam.occurrences()
    return ThinSum(CycleSpaceElement(fam.graph, odd), fam.total_length, max(occ.values(), default=0))


def circuit_decomposition(z: CycleSpaceElement) -> CircuitFamily:
    """Peel off edge-disjoint cycles until z is used up.

    Each cycle is grown as a walk from the smallest remaining edge id, always
    leaving a vertex along its smallest unused edge, until a vertex repeats;
    the closed part of the walk is removed.
    """
    g = z.graph
    remaining = set(z.edges)
    out: list[frozenset[str]] = []
    while remaining:
        start = min(remaining)
        e = g.edge(start)
        if e.is_loop:
            out.append(frozenset([start]))
            remaining.discard(start)
            continue
        walk_v = [e.u, e.v]
        walk_e = [start]
        pos = {e.u: 0, e.v: 1}
        used = {start}
        while True:
            v = walk_v[-1]
            nxt = min(eid for eid in g.incident(v) if eid in remaining and eid not in used)
            used.add(nxt)
            w = g.edge(nxt).other(v)
            walk_e.append(nxt)
            if w in pos:
                cyc = frozenset(walk_e[pos[w]:])
                break
            pos[w] = len(walk_v)
            walk_v.append(w)
        out.append(cyc)
        remaining -= cyc
    return CircuitFamily(g, tuple(out))


def all_cycles(g: WeightedGraph) -> list[frozenset[str]]:
    """Every circuit of a small multigraph (loops and parallel pairs included)."""
    found: set[frozenset[str]] = set()
    for e in g.edges.values():
        if e.is_loop:
            found.add(frozenset([e.id]))
    order = {v: i for i, v in enumerate(g.vertices)}
    for s in g.vertices:
        # cycles whose smallest vertex is s
        stack = [(s, [s], [])]
        while stack:
            v, vpath, epath = stack.pop()
            for eid, w in g.neighbors(v):
                if eid in epath or g.edge(eid).is_loop:
                    continue
                if w == s and len(epath) >= 1:
                    if len(epath) >= 2 or eid != epath[0]:
                        found.add(frozenset(epath + [eid]))
                    continue
                if order[w] <= order[s] or w in vpath:
                    continue
                stack.append((w, vpath + [w], epath + [eid]))
    return sorted(found, key=lambda c: (len(c), sorted(c)))


# -- geodetic generation ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitStep:
    parent: frozenset[str]
    parent_length: Number
    pieces: tuple[frozenset[str], ...]
    piece_lengths: tuple[Number, ...]
    pair: tuple[str, str]


@dataclass(frozen=True)
class GeodeticFamily:
    family: CircuitFamily
    trace: tuple[SplitStep, ...]

    def working_totals(self) -> list[Number]:
        """Total length of the working family before the first split and after each split."""
        return [s.parent_length for s in self.trace]


def _arcs(g: WeightedGraph, cyc: frozenset[str], x: str, y: str) -> tuple[list[str], list[str]]:
    verts, order = cycle_order(g, cyc)
    i, j = verts.index(x), verts.index(y)
    if i > j:
        i, j = j, i
    return order[i:j], order[j:] + order[:i]


def geodetic_generate(g: WeightedGraph, z: CycleSpaceElement | Iterable[str], max_steps: int = 100_000) -> GeodeticFamily:
    """Write z as a GF(2) sum of geodetic cycles.

    z is decomposed into circuits; a non-geodetic circuit C with violating
    pair (x, y) and strictly shorter x-y path P is replaced by the even sets
    A1 + P and A2 + P (A1, A2 the two arcs), each decomposed again.  Both are
    strictly shorter than C, so the process stops.
    """
    if not isinstance(z, CycleSpaceElement):
        z = CycleSpaceElement.of(g, z)
    if z.graph is not g and z.graph != g:
        raise CycleSpaceError("element belongs to a different graph")
    work = list(circuit_decomposition(z).circuits)
    done: list[frozenset[str]] = []
    trace: list[SplitStep] = []
    steps = 0
    while work:
        c = work.pop(0)
        res = is_geodetic_cycle(g, c)
        if res.geodetic:
            done.append(c)
            continue
        steps += 1
        if steps > max_steps:
            raise CycleSpaceError("geodetic splitting did not terminate")
        x, y = res.pair
        a1, a2 = _arcs(g, c, x, y)
        p = frozenset(res.shorter_path)
        pieces: list[frozenset[str]] = []
        for arc in (a1, a2):
            even = frozenset(arc) ^ p
            if even:
                pieces.extend(circuit_decomposition(CycleSpaceElement(g, even)).circuits)
        parent_len = exact_sum(g.length(e) for e in sorted(c))
        trace.append(SplitStep(c, parent_len, tuple(pieces),
                               tuple(exact_sum(g.length(e) for e in sorted(q)) for q in pieces), (x, y)))
        work = pieces + work
    return GeodeticFamily(CircuitFamily(g, tuple(done)), tuple(trace))


def geodetic_cycles(g: WeightedGraph) -> list[frozenset[str]]:
    return [c for c in all_cycles(g) if is_geodetic_cycle(g, c).geodetic]


def fold_sum(sets: Sequence[Iterable[str]]) -> frozenset[str]:
    return reduce(lambda a, b: a ^ frozenset(b), sets, frozenset())
