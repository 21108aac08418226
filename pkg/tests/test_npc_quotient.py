import pytest
from hypothesis import given, strategies as st

from cubefill.errors import GroupError
from cubefill.grp_action import ComplexOfGroups, co_cubical, enumerate_group
from cubefill.npc_quotient import (build_condition_sets, find_in_product, npc_quotient_verdict, npc_verdict,
                                   product_of, product_set)
from cubefill.sageev_gen import diagonal_square, grid_rotation, star

S4 = enumerate_group([[1, 0, 2, 3], [1, 2, 3, 0]])
subsets = st.sets(st.integers(0, 23), min_size=1, max_size=5)


@given(st.lists(subsets, min_size=1, max_size=4), st.sets(st.integers(0, 23), max_size=6))
def test_find_in_product_matches_product_set(factors, target):
    w = find_in_product(S4, factors, target)
    reachable = product_set(S4, factors) & target
    if w is None:
        assert not reachable
    else:
        assert len(w) == len(factors)
        assert all(f in F for f, F in zip(w, factors))
        assert product_of(S4, w) in target


def test_grid_half_turn_quotient_fails_at_length_two():
    A = grid_rotation()
    C = ComplexOfGroups(A)
    r = npc_quotient_verdict(C, frozenset(A.G.elements))
    assert not r["ok"] and not r["npc"]
    assert r["conditions"]["F1"]["ok"]
    assert any(f["set"] == "F2" for f in r["conditions"]["failures"])


def test_star_modulo_rotations_is_npc():
    A = star(3)
    C = ComplexOfGroups(A)
    A3 = frozenset(g for g in A.G.elements if A.G.element_order(g) != 2)
    r = npc_quotient_verdict(C, A3)
    assert r["ok"] and r["npc"] and r["cat0"]
    assert npc_verdict(C, frozenset({0}))


def test_algebra_agrees_with_geometry_on_corpus(items):
    n = 0
    for it in items:
        C = ComplexOfGroups(it.action)
        S = build_condition_sets(C)
        for K in it.kernels:
            if co_cubical(it.action, K):
                r = npc_quotient_verdict(C, K, sets=S)
                assert r["ok"] == r["npc"], (it.name, sorted(K))
                n += 1
    assert n >= 20


def test_rejects_non_co_cubical_kernel():
    A = diagonal_square()
    with pytest.raises(GroupError):
        npc_quotient_verdict(ComplexOfGroups(A), frozenset(A.G.elements))


def test_rejects_non_normal_kernel():
    A = star(3)
    t = next(g for g in A.G.elements if A.G.element_order(g) == 2)
    with pytest.raises(GroupError):
        npc_quotient_verdict(ComplexOfGroups(A), frozenset({0, t}))
