import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ltop.cyclespace import (
    CircuitFamily,
    CycleSpaceElement,
    CycleSpaceError,
    all_cycles,
    circuit_decomposition,
    cycle_basis,
    cycle_space_dimension,
    geodetic_cycles,
    geodetic_generate,
    gf2_rank,
    rank_of,
    thin_sum,
)
from ltop.generators import Fan
from ltop.graph import build_graph
from ltop.metric import is_geodetic_cycle
from oracles import fold_xor, gf2_rank_by_elimination, small_graphs


def complete(n, length=1):
    return build_graph({"vertices": [str(i) for i in range(n)],
                        "edges": [(f"k{a}{b}", str(a), str(b), length) for a, b in itertools.combinations(range(n), 2)]})


def test_tree_has_empty_basis():
    assert cycle_basis(build_graph([("a", "b", 1), ("b", "c", 1)])) == []


def test_triangle_basis():
    g = build_graph([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    (b,) = cycle_basis(g)
    assert b.edges == frozenset(g.edges)


def test_k4_basis_rank():
    g = complete(4)
    B = cycle_basis(g)
    assert len(B) == 3
    assert gf2_rank_by_elimination([b.edges for b in B], sorted(g.edges)) == 3
    assert rank_of(g, [b.edges for b in B]) == 3


@given(small_graphs(max_n=7, multigraph=True))
def test_basis_size_and_independence(g):
    B = cycle_basis(g)
    assert len(B) == cycle_space_dimension(g)
    assert all(b.is_circuit() for b in B)
    assert gf2_rank_by_elimination([b.edges for b in B], sorted(g.edges)) == len(B)


def test_even_degree_required():
    g = build_graph([("a", "b", 1), ("b", "c", 1)])
    with pytest.raises(CycleSpaceError, match="odd degree"):
        CycleSpaceElement.of(g, ["e0"])


def test_thin_sum_of_twice_the_same_circuit_is_empty():
    g = complete(3)
    c = frozenset(g.edges)
    s = thin_sum(CircuitFamily(g, (c, c)))
    assert not s.element and s.max_occurrence == 2


def test_thin_sum_rejects_non_circuit():
    g = complete(4)
    with pytest.raises(CycleSpaceError):
        CircuitFamily(g, (frozenset(["k01", "k12"]),))


@given(st.integers(0, 10_000))
def test_thin_sum_matches_fold_on_k5(seed):
    g = complete(5)
    rng = random.Random(seed)
    cycles = all_cycles(g)
    fam = [rng.choice(cycles) for _ in range(rng.randint(1, 6))]
    s = thin_sum(CircuitFamily(g, tuple(fam)))
    assert s.element.edges == fold_xor(fam)
    assert s.total_length == sum(len(c) for c in fam)


def test_fan_triangles_sum():
    t = Fan().truncate(6).graph
    k = 5
    tris = []
    for i in range(1, k + 1):
        prev = "z" if i == 1 else f"v{i-1}"
        tris.append(frozenset([f"x-{prev}", f"x-v{i}", f"{prev}-v{i}"]))
    s = thin_sum(CircuitFamily(t, tuple(tris)))
    expected = {"x-z", f"x-v{k}"} | {f"{'z' if i == 1 else f'v{i-1}'}-v{i}" for i in range(1, k + 1)}
    assert s.element.edges == expected
    assert s.total_length == sum(sum(t.length(e) for e in c) for c in tris)


def test_decompose_triangle():
    g = complete(3)
    fam = circuit_decomposition(CycleSpaceElement.of(g, g.edges))
    assert fam.circuits == (frozenset(g.edges),)


def test_decompose_bowtie():
    g = build_graph([("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("c", "d", 1), ("d", "e", 1), ("e", "c", 1)])
    fam = circuit_decomposition(CycleSpaceElement.of(g, g.edges))
    assert sorted(map(sorted, fam.circuits)) == [["e0", "e1", "e2"], ["e3", "e4", "e5"]]


def test_decompose_k5_certificate():
    g = complete(5)
    fam = circuit_decomposition(CycleSpaceElement.of(g, g.edges))
    assert fam.pairwise_disjoint()
    assert set().union(*fam.circuits) == set(g.edges)


@given(small_graphs(max_n=6, multigraph=True), st.data())
def test_decompose_random_even_sets(g, data):
    B = cycle_basis(g)
    if not B:
        return
    pick = data.draw(st.lists(st.sampled_from(B), min_size=1, max_size=4))
    z = CycleSpaceElement.of(g, fold_xor(b.edges for b in pick))
    fam = circuit_decomposition(z)
    assert fam.pairwise_disjoint()
    assert set().union(set(), *fam.circuits) == set(z.edges)


def test_geodetic_fixpoint():
    g = complete(3)
    r = geodetic_generate(g, g.edges)
    assert r.family.circuits == (frozenset(g.edges),) and r.trace == ()


def test_geodetic_four_cycle_with_chord():
    g = build_graph([("a", "b", 1), ("b", "c", 1), ("c", "d", 3), ("d", "a", 3), ("a", "c", 1)])
    r = geodetic_generate(g, ["e0", "e1", "e2", "e3"])
    assert sorted(map(sorted, r.family.circuits)) == [["e0", "e1", "e4"], ["e2", "e3", "e4"]]
    assert all(is_geodetic_cycle(g, c) for c in r.family.circuits)
    assert fold_xor(r.family.circuits) == {"e0", "e1", "e2", "e3"}


def test_geodetic_empty_element():
    g = complete(4)
    assert len(geodetic_generate(g, []).family) == 0


def test_geodetic_rejects_odd_set():
    g = complete(4)
    with pytest.raises(CycleSpaceError):
        geodetic_generate(g, ["k01"])


@given(small_graphs(max_n=6, multigraph=True))
def test_geodetic_generation_properties(g):
    for z in cycle_basis(g):
        r = geodetic_generate(g, z)
        assert fold_xor(r.family.circuits) == set(z.edges)
        assert all(is_geodetic_cycle(g, c) for c in r.family.circuits)
        for step in r.trace:
            assert all(x < step.parent_length for x in step.piece_lengths)


@given(small_graphs(max_n=5))
def test_geodetic_cycles_span(g):
    assert rank_of(g, geodetic_cycles(g)) == cycle_space_dimension(g)


def test_all_cycles_counts():
    assert len(all_cycles(complete(4))) == 7
    assert len(all_cycles(complete(5))) == 37
    multi = build_graph({"vertices": ["a", "b"], "edges": [("p", "a", "b", 1), ("q", "a", "b", 1), ("l", "a", "a", 1)]})
    assert sorted(map(sorted, all_cycles(multi))) == [["l"], ["p", "q"]]


def test_gf2_rank_helper():
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
