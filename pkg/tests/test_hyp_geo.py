import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cubefill.errors import InputError
from cubefill.hyp_geo import (MetricGraph, QcChain, check_chain_hypotheses, delta_slim, four_point_delta,
                              interval_chain, linear_beats_log_threshold, log_union_bound, plateau, qc_constant,
                              verify_globally_qc)

prufer = st.lists(st.integers(0, 11), min_size=2, max_size=10)


def tree(seq):
    n = len(seq) + 2
    return nx.from_prufer_sequence([s % n for s in seq])


@given(prufer)
def test_trees_are_zero_hyperbolic(seq):
    M = MetricGraph(tree(seq))
    assert delta_slim(M) == 0
    assert four_point_delta(M) == 0


def test_cycles_and_grids():
    assert delta_slim(MetricGraph(nx.cycle_graph(4))) == 1
    assert delta_slim(MetricGraph(nx.cycle_graph(8))) == 2
    assert delta_slim(MetricGraph(nx.grid_2d_graph(4, 4))) == 3


def test_qc_constant_on_a_star():
    M = MetricGraph(nx.star_graph(3))
    assert qc_constant(M, [1, 2]) == 1
    assert qc_constant(M, [1]) == 0
    with pytest.raises(InputError):
        qc_constant(M, [])


def test_log_union_bound_values():
    assert log_union_bound(1, 1, 0) == 1
    assert log_union_bound(2, 1, 0) == 2
    assert log_union_bound(8, 2, 1) == 9
    with pytest.raises(InputError):
        log_union_bound(0, 1, 0)


@given(prufer, st.data())
def test_union_of_chained_intervals_obeys_log_bound(seq, data):
    M = MetricGraph(tree(seq))
    k = data.draw(st.integers(1, 6))
    pts = data.draw(st.lists(st.sampled_from(M.nodes), min_size=k + 1, max_size=k + 1))
    sets = interval_chain(M, pts)
    union = {x for s in sets for x in s}
    assert qc_constant(M, union) <= log_union_bound(len(sets), 0, 0)


def test_threshold_is_monotone_and_holds():
    Rm = [linear_beats_log_threshold(m, 1, 1, 1)["R"] for m in (1, 2, 4, 8)]
    assert Rm == sorted(Rm, reverse=True)
    Rd = [linear_beats_log_threshold(2, 1, 1, d)["R"] for d in (0.5, 1, 2, 4)]
    assert Rd == sorted(Rd)
    t = linear_beats_log_threshold(2, 1, 1, 1)
    assert t["holds"] and t["increasing"] and t["min_margin"] > 0


def test_threshold_rejects_bad_parameters():
    with pytest.raises(InputError):
        linear_beats_log_threshold(0, 1, 1, 1)


def test_chain_hypothesis_three_violation():
    M = MetricGraph(nx.path_graph(7))
    bad = QcChain([[0, 1, 2], [2, 3], [3, 4]], m=5, c=1, eps=0.5)
    r = check_chain_hypotheses(M, bad)
    assert not r["ok"] and r["hypothesis"] == 3
    with pytest.raises(InputError):
        verify_globally_qc(M, bad)


def test_chain_hypothesis_disjoint_neighbours():
    M = MetricGraph(nx.path_graph(7))
    r = check_chain_hypotheses(M, QcChain([[0, 1], [3, 4]], m=1, c=2, eps=1))
    assert r == {"ok": False, "hypothesis": 2, "witness": {"index": 0}}


def test_valid_chain_on_a_path():
    M = MetricGraph(nx.path_graph(7))
    r = verify_globally_qc(M, QcChain([[0, 1, 2], [2, 3, 4], [4, 5, 6]], m=1, c=2, eps=0.5))
    assert r["eps_prime"] == 0 and r["Lambda"] == 3
    assert not r["replay"]["applicable"]


def test_plateau_is_flat():
    p = plateau(lengths=(10, 20, 40))
    assert p["deviation"] == 0


def test_disconnected_graph_rejected():
    with pytest.raises(InputError):
        MetricGraph(nx.empty_graph(2))
