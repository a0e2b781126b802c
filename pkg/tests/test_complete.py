import pytest

from chromahom.complete import expected_group, recursion_check, tower_check
from chromahom.graphs import GraphError, complete_graph
from chromahom.homology import HomologyGroup, homology_table


def test_recursion_n4():
    rep = recursion_check(4)
    assert rep.passed
    assert rep.rows[0].direct == HomologyGroup(1)
    assert all(r.direct.is_zero() for r in rep.rows if r.i >= 3)
    assert homology_table(complete_graph(4)).degree_graded(0) == {4: HomologyGroup(1)}


def test_recursion_n5_bigraded():
    rep = recursion_check(5)
    assert rep.summed_ok and rep.bigraded_ok
    small = homology_table(complete_graph(4))
    assert expected_group(small, 5, 2, 3) == HomologyGroup(6, (2,) * 5)
    assert expected_group(small, 5, 4, 1).is_zero()


def test_recursion_report_schema():
    out = recursion_check(4).to_report().to_json()
    assert out["claim"] == "recursion" and out["pass"] is True
    assert {"i", "j", "pass", "detail"} <= set(out["cases"][0])


@pytest.mark.parametrize("n", [4, 5])
def test_tower(n):
    rep = tower_check(n)
    assert rep.passed
    assert rep.cases[0].detail.startswith("[m=1]")


def test_guards():
    with pytest.raises(GraphError):
        recursion_check(3)
    with pytest.raises(GraphError):
        tower_check(3)
    with pytest.raises(GraphError):
        tower_check(7)
