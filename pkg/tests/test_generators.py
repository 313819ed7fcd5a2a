import math
from fractions import Fraction

import pytest

from ltop.generators import (
    CATALOG,
    Antares,
    Fan,
    GeneratorError,
    HyperbolicStrip,
    LadderStrip,
    catalog_listing,
    parse_generator,
    total_length,
)
from ltop.graph import build_graph

DEFAULT_SPECS = ["ladder-strip", "ladder-strip?ratio=1/2", "ray?ratio=1/3", "double-ray", "hyperbolic-strip",
                 "antares", "fan", "fan?lengths=unit", "grid?ratio=1/2", "binary-tree?ratio=1/3"]


@pytest.mark.parametrize("spec", DEFAULT_SPECS)
def test_exhaustion_is_monotone(spec):
    g = parse_generator(spec)
    for n in range(4):
        a, b = g.truncate(n), g.truncate(n + 1)
        assert set(a.graph.vertices) <= set(b.graph.vertices)
        for eid, e in a.graph.edges.items():
            assert b.graph.edge(eid) == e
        touched = {v for _, u, w, _, _ in g.level(n + 1).edges for v in (u, w)}
        assert set(a.frontier) == touched & set(a.graph.vertices)


@pytest.mark.parametrize("spec", DEFAULT_SPECS)
def test_ids_are_reproducible(spec):
    a = parse_generator(spec).truncate(3).graph
    b = parse_generator(spec).truncate(3).graph
    assert a == b


def test_ladder_level_zero():
    t = LadderStrip().truncate(0)
    assert len(t.graph.vertices) <= 4
    assert t.frontier


def test_hyperbolic_perpendicular_path_has_2_to_the_i_edges():
    t = HyperbolicStrip().truncate(3)
    perp = [eid for eid, k in t.edge_kind.items() if k == "perpendicular" and t.edge_level[eid] == 3]
    assert len(perp) == 8
    sub = t.graph.edge_subgraph(perp)
    assert sub.is_connected()
    assert sorted(sub.degree(v) for v in sub.vertices) == [1, 1] + [2] * 7


def test_antares_thin_edges_follow_schedule():
    g = Antares(c=Fraction(1), s=Fraction(3, 2))
    log = g.emission_log(4)
    for i in range(5):
        thin_i = [length for k, _, kind, length in log if k == i and kind == "thin"]
        assert sum(thin_i) == len(thin_i) * Fraction(1, 2**i)
    assert sum(length for _, _, kind, length in log if kind == "thin") == sum(
        len([1 for k, _, kind, _ in log if k == i and kind == "thin"]) * Fraction(1, 2**i) for i in range(5))


def test_antares_thick_total_is_s():
    g = Antares(s=Fraction(3, 2))
    assert g.declared_totals()["thick"] == Fraction(3, 2)
    partial = [sum(x for _, _, kind, x in g.emission_log(n) if kind == "thick") for n in range(8)]
    assert all(a <= b for a, b in zip(partial, partial[1:]))
    assert partial[-1] <= Fraction(3, 2)


def test_total_length_finite():
    r = total_length(build_graph([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)]))
    assert r.total == 3 and r.verdict == "converging"


def test_total_length_unit_ladder_diverges():
    r = total_length(LadderStrip(), levels=6)
    diffs = [b - a for a, b in zip(r.partial_sums, r.partial_sums[1:])]
    assert len(set(diffs)) == 1 and diffs[0] > 0
    assert r.verdict == "diverging"


def test_total_length_halving_ladder_converges():
    r = total_length(LadderStrip(ratio=Fraction(1, 2)), levels=20)
    assert r.verdict == "converging"
    assert r.total < r.declared
    assert r.declared - r.total < Fraction(1, 2**15)


def test_fan_unit_is_divergent_and_shrink_converges():
    assert total_length(Fan("unit")).verdict == "diverging"
    assert total_length(Fan("shrink")).verdict == "converging"


def test_parse_generator_errors():
    with pytest.raises(GeneratorError, match="unknown generator"):
        parse_generator("banana")
    with pytest.raises(GeneratorError, match="unavailable"):
        parse_generator("monster")
    with pytest.raises(GeneratorError, match="no parameter"):
        parse_generator("ray?speed=2")
    with pytest.raises(GeneratorError):
        parse_generator("ray?ratio=-1")


def test_spec_string_round_trip():
    for name in CATALOG:
        g = parse_generator(name)
        assert parse_generator(g.spec_string()) == g


def test_catalog_listing_marks_unavailable():
    names = {d["name"]: d["available"] for d in catalog_listing()}
    assert names["monster"] is False
    assert all(names[n] for n in CATALOG)


def test_truncate_negative():
    with pytest.raises(GeneratorError):
        LadderStrip().truncate(-1)


def test_fan_infimum():
    assert Fan().incident_length_infimum("x") == 0
    assert Fan("unit").incident_length_infimum("y") == 1
    assert math.isfinite(Fan().incident_length_infimum("v3"))
