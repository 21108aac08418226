import networkx as nx
import pytest

from cubefill.cube_core import from_cubes
from cubefill.grp_action import ComplexOfGroups, trivial_action
from cubefill.sageev_gen import grid_rotation, star
from cubefill.stab_graphs import StabGraphs, base_representative_lists, check_central_valence, report


def graphs(A):
    C = ComplexOfGroups(A)
    return C, StabGraphs(C)


def test_edge_lists_and_graph():
    C, sg = graphs(trivial_action(from_cubes([["a", "b"]])))
    assert sg.lists == [(), (0,), (1,)]
    assert base_representative_lists(C) == [(), (0,)]
    g = sg.gamma_U.graph
    assert (g.number_of_nodes(), g.number_of_edges()) == (5, 4)


def test_square_base_lists_have_two_ordered_pairs():
    C, sg = graphs(trivial_action(from_cubes([["a", "b", "c", "d"]])))
    pairs = [cl for cl in base_representative_lists(C) if len(cl) == 2]
    assert sorted(pairs) == [(0, 1), (1, 0)]
    assert all(len(cl) <= 2 for cl in sg.lists)


@pytest.mark.parametrize("name", ["s3-star", "grid-v4", "nested-3", "cube3", "random-0-0"])
def test_structural_report_is_clean(by_name, name):
    C, sg = graphs(by_name[name].action)
    r = report(C, sg=sg)
    assert r["ok"], [row for row in r["lists"] if not all(v for v in row.values() if isinstance(v, bool))]
    assert nx.is_connected(sg.gamma_U.graph)
    assert check_central_valence(sg.gamma_U)


def test_mutation_is_detected():
    _, sg = graphs(star(3))
    hit = 0
    for cl in sg.lists:
        mv = sg.mutated_vertices(cl)
        if mv is not None:
            hit += 1
            assert not sg.stab_invariance(cl, mv)
    assert hit > 0


def test_nesting_and_theta(by_name):
    _, sg = graphs(by_name["grid-d4"].action)
    for cl in sg.lists:
        assert sg.nesting(cl)
        assert sg.theta_in_I(cl)


def test_stab_invariance_fails_under_the_half_turn():
    # A half turn of a 2x2 grid carries the hyperplane list (2,) onto one
    # whose graph shares vertices with it, although the element does not
    # stabilize the list.  Recorded as a known counterexample.
    _, sg = graphs(grid_rotation())
    v = sg.stab_invariance((2,))
    assert not v
    assert "outside Stab(C)" in v.reason


def test_alpha_fails_on_the_reflected_square(by_name):
    _, sg = graphs(by_name["square-s2"].action)
    assert not sg.alpha_bijection((0, 1))
    assert sg.alpha_bijection((0,))
