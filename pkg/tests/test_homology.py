import json

import pytest
from hypothesis import given, settings, strategies as st

from chromahom.graphs import OrderedGraph, complete_graph, cycle_graph, kpartial, path_graph, random_connected
from chromahom.homology import (
    HomologyGroup,
    chain_euler,
    euler_matches,
    graded_euler,
    homology_at,
    homology_table,
    invariant_factors,
    presentation,
    shift_table,
    support_region_check,
)
from chromahom.polynomial import evaluate_at_one_plus_q
from chromahom.graphs import chromatic_polynomial
from oracles import naive_homology

Z = HomologyGroup


def groups(table):
    return {k: str(g) for k, g in table.groups.items()}


# frozen from the naive oracle and cross-checked against the recursion for complete graphs
K3 = {(0, 3): "Z", (1, 2): "(Z/2)", (1, 1): "Z"}
K4 = {(0, 4): "Z", (1, 3): "Z^2 + (Z/2)", (1, 2): "Z", (2, 2): "(Z/2)^2", (2, 1): "Z^2"}
K5 = {
    (0, 5): "Z",
    (1, 4): "Z^5 + (Z/2)",
    (1, 3): "Z",
    (2, 3): "Z^6 + (Z/2)^5",
    (2, 2): "Z^5",
    (3, 2): "(Z/2)^6",
    (3, 1): "Z^6",
}


def test_frozen_complete_graph_tables():
    assert groups(homology_table(complete_graph(3))) == K3
    assert groups(homology_table(complete_graph(4))) == K4
    assert groups(homology_table(complete_graph(5))) == K5


@pytest.mark.parametrize(
    "graph",
    [complete_graph(4), cycle_graph(5), path_graph(5), kpartial(4, 2), random_connected(5, 6, 2),
     OrderedGraph(4, ((1, 2), (2, 3), (2, 3), (3, 4), (1, 4)))],
    ids=str,
)
def test_against_naive_oracle(graph):
    ours = {k: (g.free_rank, g.torsion) for k, g in homology_table(graph).groups.items()}
    assert ours == naive_homology(graph.n, graph.edges)


def test_invariant_factors():
    assert invariant_factors((2, 3)) == (6,)
    assert invariant_factors((2, 4, 2)) == (2, 2, 4)
    assert invariant_factors((1, 1)) == ()
    assert str(Z(2, (2, 2))) == "Z^2 + (Z/2)^2"
    assert str(Z()) == "0"
    assert Z(1, (2,)) + Z(0, (3,)) == Z(1, (6,))


@given(st.permutations(list(range(8))))
@settings(max_examples=15, deadline=None)
def test_edge_order_invariance(order):
    g = kpartial(5, 2)
    assert homology_table(g.reordered(order)).same_groups(homology_table(g))


def test_parallel_edges_do_not_change_homology():
    for g in (cycle_graph(4), complete_graph(4), path_graph(3)):
        doubled = g.add_edges([g.edges[0], g.edges[-1]])
        assert homology_table(doubled).same_groups(homology_table(g))


def test_pendant_shift():
    for g in (complete_graph(4), cycle_graph(5)):
        pendant = OrderedGraph(g.n + 1, g.edges + ((1, g.n + 1),))
        assert homology_table(pendant).same_groups(shift_table(homology_table(g), 1))


def test_euler_identity_and_chain_euler():
    for g in (complete_graph(5), cycle_graph(6), kpartial(5, 3)):
        table = homology_table(g)
        target = evaluate_at_one_plus_q(chromatic_polynomial(g))
        assert graded_euler(table) == target == chain_euler(g)
        assert euler_matches(g, table)


def test_support_region():
    rep = support_region_check(homology_table(complete_graph(5)), 5)
    assert rep.ok and rep.only_order_two
    assert rep.torsion_cells == [(1, 4), (2, 3), (3, 2)]
    bad = shift_table(homology_table(complete_graph(4)), 2)
    assert not support_region_check(bad, 4).ok


def test_homology_at_matches_table():
    g = kpartial(5, 3)
    table = homology_table(g)
    for i in range(g.num_edges + 1):
        for j in range(g.n + 1):
            assert homology_at(g, i, j) == table.get(i, j)


def test_presentation_matches_table_and_coordinates():
    g = complete_graph(4)
    table = homology_table(g)
    for (i, j), grp in table.groups.items():
        pres = presentation(g, i, j)
        assert pres.group == grp
        gens = pres.generators()
        for k, gen in enumerate(gens):
            coords = pres.coordinates(gen)
            assert coords == [1 if t == k else 0 for t in range(len(gens))]
            # twice a Z/2 generator is a boundary
            if pres.orders[k] == 2:
                assert pres.is_boundary({r: 2 * v for r, v in gen.items()})


def test_parallel_jobs_give_same_table():
    g = kpartial(5, 3)
    assert homology_table(g, jobs=2).same_groups(homology_table(g, jobs=1))


def test_output_formats():
    g = cycle_graph(4)
    table = homology_table(g, name="cycle:4")
    payload = table.to_json(g)
    assert set(payload) == {"graph", "n", "groups", "euler_q", "chromatic_lambda"}
    assert json.loads(json.dumps(payload)) == payload
    assert payload["euler_q"] == list(evaluate_at_one_plus_q(chromatic_polynomial(g)).coeffs)
    assert table.to_csv().splitlines()[0] == "i,j,rank,torsion"
    assert "j\\i" in table.render()
