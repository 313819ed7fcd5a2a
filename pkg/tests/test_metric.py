import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ltop.generators import Antares, Fan, LadderStrip
from ltop.graph import build_graph
from ltop.metric import (
    INFINITY,
    MetricError,
    all_pairs,
    approximate_midpoint,
    certified_lower_bound,
    curve_length,
    dist,
    dist_limit,
    distance_matrix,
    eps_nlf_profile,
    is_geodetic_cycle,
    quotient,
)
from oracles import simple_path_min, small_graphs

TRIANGLE_113 = build_graph([("a", "b", 1), ("b", "c", 1), ("a", "c", 3)])


def test_dist_to_self():
    r = dist(TRIANGLE_113, "a", "a")
    assert r.value == 0 and r.path == ()


def test_dist_triangle_detour():
    r = dist(TRIANGLE_113, "a", "c")
    assert r.value == 2 == simple_path_min(TRIANGLE_113, "a", "c")
    assert r.path == ("e0", "e1")


def test_dist_disconnected_is_infinite():
    g = build_graph({"vertices": ["a", "b", "c"], "edges": [("a", "b", 1)]})
    r = dist(g, "a", "c")
    assert r.value is INFINITY and r.path == () and not r.reachable


def test_dist_edge_interior_points():
    g = TRIANGLE_113
    assert dist(g, ("e2", Fraction(1, 2)), "a").value == Fraction(1, 2)
    # interior of the long edge: going around is shorter near the middle
    assert dist(g, ("e2", Fraction(3, 2)), "a").value == Fraction(3, 2)
    assert dist(g, ("e2", Fraction(1, 2)), ("e2", Fraction(5, 2))).value == 2
    with pytest.raises(MetricError):
        dist(g, ("e2", 4), "a")


def test_unknown_vertex():
    with pytest.raises(MetricError):
        dist(TRIANGLE_113, "a", "zz")


def test_witness_tiebreak_is_deterministic():
    sq = build_graph([("a", "b", 1), ("b", "c", 1), ("a", "d", 1), ("d", "c", 1)])
    assert dist(sq, "a", "c").path == dist(sq, "a", "c").path == ("e0", "e1")


@given(small_graphs(max_n=6))
def test_dist_matches_exhaustive_search(g):
    d = all_pairs(g)
    for x, y in itertools.combinations(g.vertices, 2):
        r = dist(g, x, y)
        assert r.value == simple_path_min(g, x, y)
        assert r.path_length() == r.value
        assert d[x][y] == d[y][x] == r.value


@given(small_graphs(max_n=5))
def test_metric_axioms(g):
    d = all_pairs(g)
    V = g.vertices
    for x in V:
        assert d[x][x] == 0
        for y in V:
            assert d[x][y] == d[y][x]
            if x != y:
                assert d[x][y] > 0
            for z in V:
                assert d[x][z] <= d[x][y] + d[y][z]


@given(small_graphs(max_n=6))
def test_scipy_matrix_agrees(g):
    D = distance_matrix(g, g.vertices)
    exact = all_pairs(g)
    for i, x in enumerate(g.vertices):
        for j, y in enumerate(g.vertices):
            assert math.isclose(D[i, j], float(exact[x][y]), rel_tol=1e-12, abs_tol=1e-12)


def test_dist_limit_fan_shrinks_to_zero():
    tr = dist_limit(Fan(), "x", "y", range(12))
    vals = tr.values
    assert tr.is_antitone()
    assert vals[-1] == Fraction(2, 2**11)


def test_dist_limit_unit_fan_stabilizes():
    vals = dist_limit(Fan("unit"), "x", "y", range(8)).values
    assert vals == [2] * 8


def test_dist_limit_skips_missing_levels():
    tr = dist_limit(LadderStrip(), "a0", "a5", [2, 5, 6])
    assert [n for n, _ in tr.skipped] == [2]
    assert [r.level for r in tr.results] == [5, 6]


def test_quotient_discrete_below_min_distance():
    g = build_graph([("a", "b", 2), ("b", "c", 3), ("c", "a", 4)])
    q = quotient(g, 0, Fraction(19, 10))
    assert all(len(c) == 1 for c in q.classes)


def test_quotient_fan_shrink_joins_x_y():
    for k in range(1, 6):
        q = quotient(Fan(), k + 1, Fraction(1, 2**k))
        assert q.same_class("x", "y")


def test_quotient_fan_unit_separates():
    q = quotient(Fan("unit"), 6, Fraction(99, 100))
    assert not q.same_class("x", "y")
    assert certified_lower_bound(Fan("unit"), "x", "y") == 1


def test_quotient_requires_positive_tau():
    with pytest.raises(MetricError):
        quotient(TRIANGLE_113, 0, 0)


def test_geodetic_triangle():
    k3 = build_graph([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    assert is_geodetic_cycle(k3, ["e0", "e1", "e2"])


def test_geodetic_four_cycle_with_chord():
    g = build_graph([("a", "b", 1), ("b", "c", 1), ("c", "d", 3), ("d", "a", 3), ("a", "c", 1)])
    r = is_geodetic_cycle(g, ["e0", "e1", "e2", "e3"])
    assert not r
    assert r.pair == ("a", "c") and r.shorter_path == ("e4",)
    assert r.distance < min(r.arc_lengths)


def test_unique_cycle_is_geodetic():
    g = build_graph([("a", "b", 5), ("b", "c", 1), ("c", "a", 1), ("c", "d", 2)])
    assert is_geodetic_cycle(g, ["e0", "e1", "e2"])


def test_geodetic_rejects_non_cycle():
    with pytest.raises(MetricError):
        is_geodetic_cycle(TRIANGLE_113, ["e0", "e1"])


def test_midpoint_path():
    g = build_graph([("a", "b", 1), ("b", "c", 1)])
    m = approximate_midpoint(g, "a", "c")
    assert m.point == "b" and m.to_x == m.to_y == 1


def test_midpoint_even_cycle():
    g = build_graph([("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])
    m = approximate_midpoint(g, "a", "c")
    assert m.point in ("b", "d") and m.to_x == m.to_y


def test_midpoint_inside_an_edge():
    g = build_graph([("a", "b", 3)])
    m = approximate_midpoint(g, "a", "b")
    assert m.point == ("e0", Fraction(3, 2))


def test_midpoint_disconnected():
    g = build_graph({"vertices": ["a", "b"], "edges": []})
    with pytest.raises(MetricError):
        approximate_midpoint(g, "a", "b")


@given(small_graphs(max_n=6), st.data())
def test_midpoint_postcondition(g, data):
    x, y = data.draw(st.sampled_from(list(itertools.combinations(g.vertices, 2))))
    m = approximate_midpoint(g, x, y)
    d = dist(g, x, y).value
    assert abs(m.to_x - m.to_y) <= 1e-9
    assert m.to_x + m.to_y <= d + Fraction(1, 10**9)


def test_curve_length_edge_path():
    g = build_graph([("a", "b", 1), ("b", "c", 2)])
    for r in range(4):
        assert curve_length(g, ["a", "b", "c"], refinement=r) == 3


@given(small_graphs(max_n=5), st.integers(0, 3))
def test_curve_length_monotone_in_refinement(g, r):
    walk = list(g.vertices)
    # consecutive vertices need not be adjacent; only adjacent pairs get refined
    assert curve_length(g, walk, r) <= curve_length(g, walk, r + 1)


def test_antares_curve_length_gap():
    A = Antares()
    t = A.truncate(10).graph
    est = curve_length(t, A.wild_circle_walk(10), cyclic=True)
    assert Fraction(3, 2) + Fraction(1, 2) < est <= Fraction(5, 2)


def test_eps_nlf_report_monotone():
    g = LadderStrip(ratio=Fraction(1, 2)).truncate(8).graph
    arc = [f"a{i-1}-a{i}" for i in range(1, 9)]
    order = sorted(g.edges, key=lambda e: (-g.edge(e).length, e))
    eps = [Fraction(1, 2**k) for k in range(1, 8)]
    rep = eps_nlf_profile(g, arc, order, eps)
    ns = [rep.minimal_n(e) for e in eps]
    assert all(n is not None for n in ns)
    assert all(a <= b for a, b in zip(ns, ns[1:]))  # smaller eps needs at least as many cuts
