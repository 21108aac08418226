import random

import pytest
from hypothesis import given, strategies as st

from cubefill.acceptance import meta_agree, random_meta_tuples
from cubefill.dehn_fill import (FillingSpec, MetaTuple, Predicate, acylindricity_condition_G, all_subgroups,
                                coset_special_case, filling_pipeline, height, height_bruteforce, meta_checker,
                                parse_predicate, q_filling_check, spec_from_dicts)
from cubefill.errors import GroupError, InputError
from cubefill.grp_action import enumerate_group
from cubefill.sageev_gen import grid_rotation, star

S4 = enumerate_group([[1, 0, 2, 3], [1, 2, 3, 0]], names=["s", "c"])
SUBS = all_subgroups(S4)
S3 = star(3).G


def test_subgroup_count_of_s4():
    assert len(SUBS) == 30
    assert len(all_subgroups(S3)) == 6


def test_height_of_a_transposition_in_s3():
    t = next(H for H in all_subgroups(S3) if len(H) == 2)
    assert height(S3, [t]) == height_bruteforce(S3, [t]) == 1
    assert height(S3, [frozenset({0})]) == 0


@given(st.lists(st.sampled_from(SUBS), min_size=1, max_size=3), st.integers(1, 6))
def test_height_matches_bruteforce(family, n):
    assert height(S4, family, Predicate(n)) == height_bruteforce(S4, family, Predicate(n))


@given(st.lists(st.sampled_from(SUBS), min_size=1, max_size=3))
def test_height_is_monotone_in_the_predicate(family):
    hs = [height(S4, family, Predicate(n)) for n in (12, 6, 4, 3, 2, 1)]
    assert hs == sorted(hs)


def test_parse_predicate():
    assert parse_predicate(None) == Predicate(1)
    assert parse_predicate("nontrivial").name == "nontrivial"
    assert parse_predicate("order>3") == Predicate(3)
    assert parse_predicate("order>3").name == "order>3"
    with pytest.raises(InputError):
        parse_predicate("big")


@given(st.integers(0, 10**6))
def test_meta_checker_agrees_with_enumeration(seed):
    rng = random.Random(seed)
    tuples = random_meta_tuples(S4, SUBS, rng, rng.randint(1, 3))
    K = rng.choice([H for H in SUBS if S4.is_normal(H)])
    assert meta_agree(S4, tuples, K)


@given(st.integers(0, 23), st.sampled_from(SUBS), st.sampled_from([H for H in SUBS if S4.is_normal(H)]))
def test_coset_special_case(p, Q, K):
    if p in Q:
        return
    assert coset_special_case(S4, p, Q, K) == meta_checker(S4, [MetaTuple(p, Q)], K)["ok"]


def test_meta_checker_rejects_failed_hypothesis():
    with pytest.raises(InputError):
        meta_checker(S4, [MetaTuple(0, frozenset({0}))], [0])


def test_filling_files_and_q_filling():
    spec = spec_from_dicts(S3, {"peripherals": [{"name": "P", "generators": ["g0", "g1"]}]},
                           {"kernels": [{"peripheral": "P", "generators": ["g1"]}]})
    assert spec.peripherals[0] == frozenset(S3.elements)
    A3 = spec.kernels[0]
    assert len(A3) == 3
    t = next(H for H in all_subgroups(S3) if len(H) == 2)
    assert q_filling_check(S3, spec, [A3])["ok"]
    assert q_filling_check(S3, spec, [frozenset({0})])["ok"]
    assert not q_filling_check(S3, spec, [t])["ok"]


def test_filling_files_reject_unknown_peripheral():
    with pytest.raises(InputError):
        spec_from_dicts(S3, {"peripherals": []}, {"kernels": [{"peripheral": "Q", "generators": []}]})


def test_kernel_must_be_normal_in_peripheral():
    A = star(3)
    G = A.G
    P = frozenset(G.elements)
    t = next(H for H in all_subgroups(G) if len(H) == 2)
    with pytest.raises(GroupError):
        filling_pipeline(A, FillingSpec([P], [t]))


def test_pipeline_on_the_star():
    A = star(3)
    G = A.G
    A3 = next(H for H in all_subgroups(G) if len(H) == 3)
    r = filling_pipeline(A, FillingSpec([frozenset(G.elements)], [A3]))
    assert r["ok"] and r["order_K"] == 3
    assert r["stages"]["e_height"]["before"] >= r["stages"]["e_height"]["after"]
    assert "Z" in r


def test_pipeline_reports_failed_link_condition():
    A = grid_rotation()
    G = A.G
    r = filling_pipeline(A, FillingSpec([frozenset(G.elements)], [frozenset(G.elements)]))
    assert not r["ok"]
    assert not r["stages"]["d_npc"]["ok"]


def test_acylindricity_table():
    r = acylindricity_condition_G(star(3))
    assert r["k"] == 3
    assert r["table"][0]["R"] == 6
    assert [row["R"] for row in r["table"]] == sorted((row["R"] for row in r["table"]), reverse=True)
