import itertools

import pytest
from hypothesis import given, strategies as st

from cubefill.errors import GroupError, InvariantViolation
from cubefill.grp_action import (ComplexOfGroups, co_cubical, enumerate_group, normal_closure,
                                 normal_closure_saturate, parse_word, quotient_complex, subgroup_from_words)
from cubefill.sageev_gen import diagonal_square, grid_rotation, path_reflection, star

S4 = enumerate_group([[1, 0, 2, 3], [1, 2, 3, 0]], names=["s", "c"])


def test_symmetric_group_orders():
    assert len(S4) == 24
    assert len(star(3).G) == 6
    assert all(S4.m(g, int(S4.inv[g])) == 0 for g in S4.elements)


def test_mul_is_composition_of_permutations():
    P = S4.perms
    for g, h in itertools.product(range(0, 24, 5), range(0, 24, 7)):
        assert (P[S4.mul[g, h]] == P[g][P[h]]).all()


@given(st.sets(st.integers(0, 23), max_size=3))
def test_normal_closure_implementations_agree(S):
    K = normal_closure(S4, S)
    assert K == normal_closure_saturate(S4, S)
    assert S4.is_normal(K)
    assert len(S4) % len(K) == 0


def test_normal_subgroups_of_s4():
    sizes = sorted({len(normal_closure(S4, [g])) for g in S4.elements})
    assert sizes == [1, 4, 12, 24]


def test_parse_word():
    s, c = S4.gens
    assert parse_word(S4, "s s") == 0
    assert parse_word(S4, "c^4") == 0
    assert parse_word(S4, "c^-1") == int(S4.inv[c])
    assert parse_word(S4, "s*c") == S4.m(s, c)
    assert parse_word(S4, 5) == 5
    assert len(subgroup_from_words(S4, ["c"])) == 4
    assert len(subgroup_from_words(S4, ["c c"], normal=True)) == 4


@pytest.mark.parametrize("w", ["x", "s^y", 99])
def test_parse_word_rejects(w):
    with pytest.raises(GroupError):
        parse_word(S4, w)


def test_enumerate_rejects_non_permutation():
    with pytest.raises(GroupError):
        enumerate_group([[0, 0, 1]])


def test_co_cubical():
    full = lambda A: frozenset(A.G.elements)
    assert not co_cubical(diagonal_square(), full(diagonal_square()))
    assert not co_cubical(path_reflection(3), full(path_reflection(3)))
    assert co_cubical(path_reflection(4), full(path_reflection(4)))
    assert co_cubical(grid_rotation(), full(grid_rotation()))


def test_quotient_of_star_is_an_edge():
    A = star(3)
    Z = quotient_complex(A, frozenset(A.G.elements))
    assert Z.counts() == [2, 1]
    assert len(Z.quotient_group) == 1


def test_quotient_rejects_flip():
    A = diagonal_square()
    with pytest.raises(GroupError):
        quotient_complex(A, frozenset(A.G.elements))


@pytest.mark.parametrize("choice", ["min", "max", 3, 11])
def test_complex_of_groups_axioms_hold_for_any_choice(by_name, choice):
    triples = 0
    for name in ("s3-star", "grid-d4", "diagonal-square", "s3-cube"):
        C = ComplexOfGroups(by_name[name].action, choice=choice)
        triples += C.verify()["triples"]
    assert triples > 0


def test_local_group_orders_multiply_to_chain_counts(by_name):
    A = by_name["s3-star"].action
    C = ComplexOfGroups(A)
    n = sum(len(A.G) // len(C.local[v]) for v in range(C.n_objects))
    assert n == len(C.ideal.chains)


def test_verify_detects_corrupted_twisting(by_name):
    C = ComplexOfGroups(by_name["s3-star"].action)
    a = next(a for a in C.Y.nontrivial() if len(C.local[C.Y.src(a)]) > 1)
    C.h[a] = next(g for g in C.G.elements if C.G.conj_set(g, C.local[C.Y.src(a)]) - C.local[C.Y.dst(a)])
    with pytest.raises(InvariantViolation):
        C.verify()
