import pytest

from chromahom.graphs import GraphError, OrderedGraph, complete_graph, cycle_graph, kpartial, path_graph
from chromahom.sequences import (
    alpha_matrix,
    beta_matrix,
    connecting_map,
    gamma_zero_report,
    kpartial_triple,
    les_report,
    make_triple,
    phi_section_check,
    ses_checks,
    ses_report,
    verify_ses,
    verify_split,
)
from chromahom.states import EnhancedState, chain_complex


def test_make_triple_shapes():
    g = complete_graph(4)
    t = make_triple(g, g.find_edge(3, 4))
    assert t.reordered.edges[-1] == (3, 4)
    assert t.minus.edges == t.reordered.edges[:-1]
    assert t.over.n == 3 and t.over.num_edges == 5
    assert sorted(t.over.edges) == [(1, 2), (1, 3), (1, 3), (2, 3), (2, 3)]
    with pytest.raises(GraphError):
        make_triple(OrderedGraph(2, ((1, 1), (1, 2))), 0)


def test_alpha_sends_all_x_vertex_state_to_edge_state():
    g = kpartial(5, 2)
    t = kpartial_triple(5, 2)
    alpha = alpha_matrix(t, 1, 4)
    source = chain_complex(t.over).basis(0, 4)
    target = chain_complex(t.reordered).basis(1, 4)
    k = source.index[EnhancedState(0, 0b1111)]
    (row,) = alpha.columns[k]
    assert target.states[row] == EnhancedState(1 << t.last, 0b1111)
    assert all(len(c) == 1 and list(c.values()) == [1] for c in alpha.columns)
    assert g.num_edges == t.reordered.num_edges


def test_beta_alpha_vanishes_and_ranks():
    t = kpartial_triple(5, 2)
    for i in range(t.graph.num_edges + 1):
        for j in range(6):
            a, b = alpha_matrix(t, i, j), beta_matrix(t, i, j)
            assert (b @ a).is_zero()
            assert len({next(iter(c)) for c in b.columns if c}) == b.rows
            assert verify_ses(t, i, j)


@pytest.mark.parametrize("graph", [kpartial(4, 2), cycle_graph(5), path_graph(2), complete_graph(4)], ids=str)
def test_ses_every_edge(graph):
    for k in range(graph.num_edges):
        assert ses_report(make_triple(graph, k)).passed


def test_ses_with_parallel_edge():
    g = OrderedGraph(3, ((1, 2), (1, 2), (2, 3), (1, 3)))
    for k in range(g.num_edges):
        assert ses_report(make_triple(g, k)).passed


def test_ses_checks_report_each_part():
    t = make_triple(cycle_graph(4), 0)
    assert set(ses_checks(t, 1, 2)) == {
        "alpha_injective", "beta_surjective", "ker_beta_eq_im_alpha", "alpha_chain_map", "beta_chain_map",
    }


def test_connecting_map_nonzero_on_triangle():
    # H^{0,2}(path) = Z maps onto twice the generator of H^{0,2}(C_2)
    t = make_triple(complete_graph(3), 2)
    gamma = connecting_map(t, 0, 2)
    assert gamma.source_orders == [0] and gamma.target_orders == [0]
    assert abs(gamma.matrix[0][0]) == 2
    assert not gamma.is_zero()


@pytest.mark.parametrize("n,m", [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_gamma_vanishes_on_kpartial(n, m):
    rep = gamma_zero_report(n, m)
    assert rep.passed
    assert {(c.i + c.j) for c in rep.cases} == {n - 1, n}


@pytest.mark.parametrize("n,m", [(4, 2), (4, 3), (5, 3)])
def test_split_on_kpartial(n, m):
    rep = verify_split(kpartial_triple(n, m))
    assert rep.passed
    assert any(c.j is None for c in rep.cases)


def test_split_rejects_bad_hypotheses():
    with pytest.raises(GraphError):
        kpartial_triple(4, 1)
    with pytest.raises(GraphError):
        verify_split(make_triple(complete_graph(4), 0))
    with pytest.raises(GraphError):
        verify_split(make_triple(path_graph(3), 0), non_bridge=True)


@pytest.mark.parametrize("graph", [cycle_graph(4), cycle_graph(5), cycle_graph(6), complete_graph(4)], ids=str)
def test_split_for_non_bridge_edges(graph):
    for k in range(graph.num_edges):
        rep = verify_split(make_triple(graph, k), non_bridge=True)
        assert rep.passed
        assert [c.i for c in rep.cases] == list(range(2, graph.n + 1))


@pytest.mark.parametrize("graph", [cycle_graph(4), kpartial(4, 2), complete_graph(4), path_graph(3)], ids=str)
def test_long_exact_sequence_is_exact(graph):
    for k in range(graph.num_edges):
        assert les_report(make_triple(graph, k)).passed


@pytest.mark.parametrize("n,m", [(4, 2), (4, 3), (5, 2), (5, 4)])
def test_section_on_first_degree(n, m):
    chk = phi_section_check(kpartial_triple(n, m), n)
    assert chk.ok
    assert chk.kernel_maps_to_kernel and chk.replaced_generators_killed
    # the chain-level map alone does not kill the star at vertex n
    assert not chk.literal_kills_image
    assert chk.literal_values[f"d(hat {n})"] == 1
    t = kpartial_triple(n, m)
    basis = chain_complex(t.reordered).basis(1, n - 1)
    e_state = basis.index[EnhancedState(1 << t.last, (1 << (n - 1)) - 1)]
    assert chk.section[e_state] == 1
