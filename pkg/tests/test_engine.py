import itertools
import random
import time

import pytest

from closedchroma import engine
from closedchroma.engine import (
    Labeling,
    Verdict,
    closed_chromatic_number,
    closed_matrix,
    coloring_from_ieds,
    exact_chromatic_number,
    exists_closed_coloring,
    find_ieds,
    is_ieds,
    lift_residue_solution,
    min_order_for_residue_solution,
    probe_additivity,
    probe_ieds_question,
    verify_labeling,
)
from closedchroma.graphs import Graph, build_family, parse_family
from helpers import (
    NAMED_FIVE,
    brute_chromatic,
    brute_closed_solutions,
    iso_class_representatives,
    literal_closed_chromatic,
    random_graph,
)


def build(text):
    return build_family(parse_family(text))


def test_closed_matrix_examples():
    assert closed_matrix(Graph.from_edges(1, [])) == [[1]]
    assert closed_matrix(build("path:2")) == [[1, 1], [1, 1]]
    assert closed_matrix(build("cycle:4"))[0] == [1, 1, 0, 1]


@pytest.mark.parametrize("n, k", [(2, 1), (5, 3), (7, 6), (3, 4)])
def test_path_witnesses_from_the_text(n, k):
    rep = verify_labeling(build("path:3"), [0, k, 0], n, k)
    assert rep.ok and rep.order == 2


@pytest.mark.parametrize("m", range(4, 11))
def test_path_three_colourings(m):
    # (k, 0, n, k, 0, n, ..., k) when m = 1 mod 3, else (0, k, n, 0, k, n, ...)
    n, k = 5, 2
    pattern = [k, 0, n] if m % 3 == 1 else [0, k, n]
    rep = verify_labeling(build(f"path:{m}"), [pattern[i % 3] for i in range(m)], n, k)
    assert rep.ok and rep.order == 3


def test_verify_labeling_reports():
    rep = verify_labeling(build("path:7"), [0, 2, 5, 0, 2, 5, 0], 5, 2)
    assert rep.proper and not rep.closed_ok and "6" in rep.first_violation
    rep = verify_labeling(build("cycle:6"), [0] * 6, 2, 1)
    assert not rep.proper and not rep.closed_ok and rep.first_violation
    with pytest.raises(ValueError):
        verify_labeling(build("cycle:6"), [0] * 5, 2, 1)


def test_existence_examples():
    assert exists_closed_coloring(build("bipartite:2,2"), 3, 1) is None
    assert exists_closed_coloring(build("petersen:5,2"), 1, 0) is not None
    assert exists_closed_coloring(build("cycle:4"), 3, 1) is None
    # single edge: one free parameter, n solutions
    space = exists_closed_coloring(build("path:2"), 6, 1)
    assert space.size_bound == 6


def test_existence_against_exhaustive_residues():
    rng = random.Random(7)
    for _ in range(60):
        graph = random_graph(rng, 5)
        n = rng.randint(1, 4)
        a = closed_matrix(graph)
        for k in range(n):
            brute = next(brute_closed_solutions(a, [k] * len(a), n), None)
            assert (exists_closed_coloring(graph, n, k) is None) == (brute is None)


@pytest.mark.parametrize("text, chi", [
    ("cycle:5", 3), ("petersen:5,2", 3), ("bipartite:3,4", 2), ("complete:6", 6),
    ("friendship:3", 3), ("binary-tree:3", 2), ("petersen:7,2", 3),
])
def test_chromatic_examples(text, chi):
    assert exact_chromatic_number(build(text)) == chi


def test_chromatic_against_brute_force():
    rng = random.Random(11)
    for _ in range(80):
        graph = random_graph(rng, 7)
        assert exact_chromatic_number(graph) == brute_chromatic(graph)


def test_chromatic_bound():
    with pytest.raises(engine.ResourceLimit):
        exact_chromatic_number(build("path:10"), bound=5)


def test_residue_minimisation_examples():
    p4 = build("path:4")
    # the only solution for n=2, k=1; classes {v0,v3} independent, {v1,v2} an edge
    assert min_order_for_residue_solution(p4, [1, 0, 0, 1], 2) == 3
    lab = lift_residue_solution(p4, [1, 0, 0, 1], 2)
    assert verify_labeling(p4, lab, 2, 1).ok and lab.order == 3
    with pytest.raises(ValueError):
        min_order_for_residue_solution(p4, [0, 1, 0, 1], 2)


def test_constant_residue_on_complete_graph():
    # K_4 with constant 1 has closed sums 4 = 0 mod 4; every lift needs 4 values
    k4 = build("complete:4")
    assert min_order_for_residue_solution(k4, [1, 1, 1, 1], 4) == 4


@pytest.mark.parametrize("text, n, k, value", [
    ("path:4", 2, 1, 3),
    ("cycle:6", 2, 1, 2),
    ("complete:4", 5, 3, 4),
    ("petersen:5,2", 1, 0, 3),
    ("star:3", 4, 3, 2),
    ("caterpillar:3,3", 3, 1, 2),
])
def test_closed_chromatic_examples(text, n, k, value):
    graph = build(text)
    v = closed_chromatic_number(graph, n, k)
    assert v.status == engine.EXISTS and v.value == value
    rep = verify_labeling(graph, v.witness, n, k)
    assert rep.ok and rep.order == value


def test_closed_chromatic_nonexistence():
    v = closed_chromatic_number(build("cycle:5"), 3, 1)
    assert v.status == engine.NOT_EXISTS and v.witness is None
    v = closed_chromatic_number(build("bipartite:2,3"), 5, 1)
    assert v.status == engine.NOT_EXISTS


def test_k_is_normalised():
    graph = build("cycle:6")
    base = closed_chromatic_number(graph, 3, 1)
    for k in (4, -2, 10):
        v = closed_chromatic_number(graph, 3, k)
        assert (v.status, v.value) == (base.status, base.value)


def test_caps_produce_unknown():
    # two residue solutions; with cap 1 the first gives 4 > chi = 2, so no early stop
    graph = build("caterpillar:4,4")
    v = closed_chromatic_number(graph, 6, 1, enumeration_cap=1)
    assert v.is_unknown and v.source == "cap: upper bound 4"
    assert verify_labeling(graph, v.witness, 6, 1).ok
    assert closed_chromatic_number(graph, 6, 1).value == 4
    # reaching chi stops early, and a fully walked space is exact, under any cap
    v = closed_chromatic_number(build("complete:4"), 6, 2, enumeration_cap=1)
    assert v.is_exists and v.value == 4
    v = closed_chromatic_number(build("path:4"), 2, 1, enumeration_cap=1)
    assert v.is_exists and v.value == 3


def test_deadline_produces_budget_unknown():
    v = closed_chromatic_number(build("caterpillar:4,4"), 6, 1, deadline=time.monotonic() - 1)
    assert v.is_unknown and "budget" in v.source


def test_invalid_modulus():
    with pytest.raises(ValueError):
        closed_chromatic_number(build("path:3"), 0, 1)


def test_tiny_oracle_spot_checks():
    for name in ("C5", "bull", "K2,3"):
        graph = Graph.from_edges(5, NAMED_FIVE[name])
        for n in (2, 3):
            literal = literal_closed_chromatic(graph, n)
            for k in range(n):
                v = closed_chromatic_number(graph, n, k)
                assert (v.value if v.is_exists else None) == literal[k], (name, n, k)


def test_ieds_examples():
    assert is_ieds(build("star:4"), [0])
    assert is_ieds(build("cycle:6"), [0, 3])
    c4 = build("cycle:4")
    assert not any(is_ieds(c4, s) for r in range(5) for s in itertools.combinations(range(4), r))
    assert find_ieds(c4) is None
    assert find_ieds(build("friendship:3")) == (0,)
    pet = build("petersen:5,2")
    found = find_ieds(pet)
    assert found is None or is_ieds(pet, found)


def test_find_ieds_matches_subset_scan():
    rng = random.Random(3)
    for _ in range(60):
        graph = random_graph(rng, 7)
        size = graph.vertex_count
        subsets = [s for r in range(size + 1) for s in itertools.combinations(range(size), r)
                   if is_ieds(graph, s)]
        found = find_ieds(graph)
        if subsets:
            assert found == min(subsets, key=lambda s: [int(v not in s) for v in range(size)])
        else:
            assert found is None


def test_coloring_from_ieds_examples():
    lab = coloring_from_ieds(build("star:3"), [0], 4, 3)
    assert lab.values == (3, 4, 4, 4)
    assert verify_labeling(build("star:3"), lab, 4, 3).ok and lab.order == 2
    c6 = build("cycle:6")
    lab = coloring_from_ieds(c6, [0, 3], 2, 1)
    assert verify_labeling(c6, lab, 2, 1).ok and lab.order <= 3
    with pytest.raises(ValueError):
        coloring_from_ieds(c6, [0, 2], 2, 1)


def test_additivity_examples():
    rec = probe_additivity(build("complete:3"), 5, 1, 2)
    assert rec.lhs.value == 3 and rec.rhs_sum == 6 and rec.subadditive is True
    rec = probe_additivity(build("cycle:5"), 3, 1, 1)
    assert rec.lhs.status == engine.NOT_EXISTS and rec.subadditive is None


def test_ieds_question_probe():
    rec = probe_ieds_question(build("star:3"), 6)
    assert rec.ieds == (0,) and rec.all_exist and rec.failing_modulus is None
    rec = probe_ieds_question(build("cycle:4"), 6)
    assert rec.ieds is None and not rec.all_exist and rec.failing_modulus == 3


def test_verdict_and_labeling_types():
    assert Labeling([3, 1, 3]).order == 2
    assert Verdict.exists(2, "x").is_exists
    assert Verdict.unknown("cap").is_unknown
    assert Verdict.not_exists("x").value is None


def test_small_iso_classes_with_literal_oracle():
    for graph in iso_class_representatives(3):
        for n in (1, 2, 3):
            literal = literal_closed_chromatic(graph, n)
            for k in range(n):
                v = closed_chromatic_number(graph, n, k)
                assert (v.value if v.is_exists else None) == literal[k]
