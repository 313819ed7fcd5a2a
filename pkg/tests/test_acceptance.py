"""Acceptance criteria 1-8.

Each ``criterion_N`` function returns ``(passed, detail)``.  Under pytest
every criterion is one test, and the conftest prints one PASS/FAIL line per
criterion at the end of the run.  ``python tests/test_acceptance.py`` prints
the same lines without pytest.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ltop.completion import boundary_profile, floyd_lengths, lind_distances, lind_graph, nst_lengths  # noqa: E402
from ltop.cyclespace import cycle_basis, geodetic_cycles, geodetic_generate  # noqa: E402
from ltop.generators import Antares, Fan, HyperbolicStrip  # noqa: E402
from ltop.graph import build_graph, line_graph  # noqa: E402
from ltop.metric import (  # noqa: E402
    all_pairs,
    approximate_midpoint,
    certified_lower_bound,
    curve_length,
    dist,
    is_geodetic_cycle,
    quotient,
)
from ltop.tours import euler_to_hamilton, euler_tour, hamilton_length, hamilton_verify, verify_euler  # noqa: E402
from oracles import (  # noqa: E402
    connected_atlas_graphs,
    fold_xor,
    gf2_rank_by_elimination,
    nx_to_weighted,
    random_connected_graph,
    random_eulerian_multigraph,
    random_rational_lengths,
    simple_path_min,
)

RESULTS: dict[int, tuple[bool, str, float]] = {}


def _timed(n, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    RESULTS[n] = (ok, detail, elapsed)
    return ok, detail, elapsed


# 1 -----------------------------------------------------------------------------------

def antares_thick_total(a: Antares, n: int) -> Fraction:
    """Thick length in G_n plus the exact geometric tail of everything emitted later."""
    emitted = sum(x for _, _, kind, x in a.emission_log(n) if kind == "thick")
    tail_L = a.s / 3 / 2**n
    tail_born = sum(a.budget(i) / 2 / 2 ** (n - i) * 2 ** (i - 1) for i in range(1, n + 1))
    tail_unborn = a.s / 3 / 2**n
    return emitted + tail_L + tail_born + tail_unborn


def criterion_1():
    a = Antares(c=Fraction(1), s=Fraction(3, 2))
    ests = {}
    for n in (10, 11):
        t = a.truncate(n).graph
        ests[n] = curve_length(t, a.wild_circle_walk(n), cyclic=True)
    delta = min(ests.values()) - Fraction(3, 2)
    in_range = all(Fraction(3, 2) + delta <= e <= Fraction(5, 2) for e in ests.values())
    totals = {antares_thick_total(a, n) for n in (4, 8, 12)}
    ok = in_range and delta > Fraction(1, 2) and totals == {Fraction(3, 2)} and a.declared_totals()["thick"] == Fraction(3, 2)
    est_text = ", ".join(f"n={n}: {float(e):.6f}" for n, e in ests.items())
    return ok, f"estimates {est_text}; delta={float(delta):.4f}; sum over E(W) = {sorted(totals)}"


# 2 -----------------------------------------------------------------------------------

def criterion_2():
    eps_all = [Fraction(1, 2**k) for k in range(1, 9)]
    fg4 = floyd_lengths(HyperbolicStrip(), "pow4", "h0.0")
    c4 = [c.count for c in boundary_profile(fg4, [8], 14, eps_all).at(8).clusterings]
    fg2 = floyd_lengths(HyperbolicStrip(), "pow2", "h0.0")
    c2 = [c.count for c in boundary_profile(fg2, [8], 14, eps_all[:5]).at(8).clusterings]
    ok = all(c == 1 for c in c4) and all(a < b for a, b in zip(c2, c2[1:]))
    return ok, f"pow4 counts (eps 2^-1..2^-8) {c4}; pow2 counts (eps 2^-1..2^-5) {c2}"


# 3 -----------------------------------------------------------------------------------

FIVE_POINTS = ["p", "q", "r", "s", "t"]
FIVE_COORDS = {"p": (0, 0), "q": (3, 0), "r": (3, 4), "s": (0, 4), "t": (1, 1)}


def five_point_metric():
    """Rational l1 distances of five lattice points."""
    def l1(a, b):
        return Fraction(abs(a[0] - b[0]) + abs(a[1] - b[1]), 2)
    return [[l1(FIVE_COORDS[u], FIVE_COORDS[w]) for w in FIVE_POINTS] for u in FIVE_POINTS]


def criterion_3():
    M = five_point_metric()
    lg = lind_graph(FIVE_POINTS, M)
    dd = lind_distances(lg, 12)
    errs = [abs(d - M[FIVE_POINTS.index(u)][FIVE_POINTS.index(w)]) for (u, w), d in dd.items()]
    ok = len(errs) == 10 and max(errs) <= Fraction(1, 2**8)
    return ok, f"{len(errs)} pairs, max |d - d_X| = {max(errs)}"


# 4 -----------------------------------------------------------------------------------

def criterion_4():
    rng = random.Random(4)
    graphs = connected_atlas_graphs(6)
    instances = failures = 0
    for G in graphs:
        for _ in range(3):
            g = nx_to_weighted(G, random_rational_lengths(G, rng))
            instances += 1
            for z in cycle_basis(g):
                fam = geodetic_generate(g, z).family
                if fold_xor(fam.circuits) != set(z.edges) or not all(is_geodetic_cycle(g, c) for c in fam.circuits):
                    failures += 1
            geo = geodetic_cycles(g)
            if gf2_rank_by_elimination(geo, sorted(g.edges)) != len(g.edges) - len(g.vertices) + 1:
                failures += 1
    return failures == 0, f"{len(graphs)} connected graphs x 3 length assignments = {instances} instances, {failures} failures"


# 5 -----------------------------------------------------------------------------------

def criterion_5():
    rng = random.Random(5)
    bad = 0
    max_edges = 0
    for _ in range(200):
        g = random_eulerian_multigraph(rng, max_edges=12)
        max_edges = max(max_edges, len(g.edges))
        t = euler_tour(g)
        h = euler_to_hamilton(g, t)
        L = line_graph(g)
        if not (verify_euler(g, t) and hamilton_verify(L, h) and hamilton_length(L, h) == g.total_length()):
            bad += 1
    return bad == 0, f"200 seeded multigraphs (max {max_edges} edges), {bad} failures"


# 6 -----------------------------------------------------------------------------------

def criterion_6():
    rng = random.Random(6)
    graphs = connected_atlas_graphs(6)
    mismatches = axiom = midpoint = 0
    for G in graphs:
        g = nx_to_weighted(G, random_rational_lengths(G, rng))
        d = all_pairs(g)
        V = g.vertices
        for x, y in itertools.combinations(V, 2):
            if dist(g, x, y).value != simple_path_min(g, x, y):
                mismatches += 1
            m = approximate_midpoint(g, x, y, eps=Fraction(1, 10**9))
            if abs(m.to_x - m.to_y) > Fraction(1, 10**9) or m.to_x + m.to_y > d[x][y] + Fraction(1, 10**9):
                midpoint += 1
        for x in V:
            if d[x][x] != 0:
                axiom += 1
            for y in V:
                if d[x][y] != d[y][x] or (x != y and d[x][y] <= 0):
                    axiom += 1
                for z in V:
                    if d[x][z] > d[x][y] + d[y][z]:
                        axiom += 1
    ok = mismatches == axiom == midpoint == 0
    return ok, f"{len(graphs)} graphs; dist mismatches {mismatches}, axiom violations {axiom}, midpoint failures {midpoint}"


# 7 -----------------------------------------------------------------------------------

def reference_dfs_levels(g, root):
    """DFS levels from networkx, with neighbours in order of their smallest connecting edge id."""
    G = nx.MultiGraph()
    G.add_nodes_from(g.vertices)
    for eid in sorted(g.edges):
        e = g.edge(eid)
        G.add_edge(e.u, e.v, key=eid)
    preds = nx.dfs_predecessors(G, source=root)
    level = {root: 0}
    for v in nx.dfs_preorder_nodes(G, source=root):
        if v != root:
            level[v] = level[preds[v]] + 1
    return level


def criterion_7():
    rng = random.Random(7)
    bad = 0
    for _ in range(100):
        g = random_connected_graph(rng, rng.randint(2, 12), rng.randint(0, 15))
        root = g.vertices[0]
        r = nst_lengths(g, root)
        level = reference_dfs_levels(g, root)
        for eid, e in g.edges.items():
            lo, hi = sorted((level[e.u], level[e.v]))
            expected = sum((Fraction(1, 2**n) for n in range(lo + 1, hi + 1)), Fraction(0))
            if r.lengths[eid] != expected:
                bad += 1
    return bad == 0, f"100 graphs, {bad} edges with a wrong length"


# 8 -----------------------------------------------------------------------------------

def criterion_8():
    joined = {}
    for k in range(1, 9):
        tau = Fraction(1, 2**k)
        joined[k] = next((n for n in range(0, 20) if quotient(Fan(), n, tau).same_class("x", "y")), None)
    unit = Fan("unit")
    separated = all(not quotient(unit, 8, tau).same_class("x", "y")
                    for tau in (Fraction(1, 2), Fraction(9, 10), Fraction(999, 1000)))
    bound = certified_lower_bound(unit, "x", "y")
    ok = all(n is not None for n in joined.values()) and separated and bound > 0
    return ok, f"shrink: x~y at levels {joined}; unit: separated={separated}, lower bound {bound}"


CRITERIA = {
    1: ("Antares length gap", criterion_1, 10.0),
    2: ("Floyd dichotomy", criterion_2, 60.0),
    3: ("Lind isometry", criterion_3, 30.0),
    4: ("Geodetic span", criterion_4, None),
    5: ("Euler to Hamilton composition", criterion_5, None),
    6: ("Metric core oracle equivalence", criterion_6, None),
    7: ("nst_lengths formula", criterion_7, None),
    8: ("Fan-graph quotient", criterion_8, None),
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    name, fn, limit = CRITERIA[n]
    ok, detail, elapsed = _timed(n, fn)
    if limit is not None and elapsed >= limit:
        RESULTS[n] = (False, f"{detail}; runtime {elapsed:.1f}s exceeds {limit:.0f}s", elapsed)
    assert RESULTS[n][0], RESULTS[n][1]


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(CRITERIA):
        if n not in RESULTS:
            continue
        ok, detail, elapsed = RESULTS[n]
        lines.append(f"criterion {n} {'PASS' if ok else 'FAIL'} [{CRITERIA[n][0]}] ({elapsed:.2f}s) {detail}")
    return lines


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        name, fn, limit = CRITERIA[n]
        ok, detail, elapsed = _timed(n, fn)
        if limit is not None and elapsed >= limit:
            ok = False
            RESULTS[n] = (False, f"{detail}; runtime {elapsed:.1f}s exceeds {limit:.0f}s", elapsed)
        failed += not RESULTS[n][0]
        print(summary_lines()[-1], flush=True)
    sys.exit(1 if failed else 0)
