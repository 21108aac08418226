import random

import pytest
from hypothesis import given, strategies as st

from cubefill.cgy_dev import (BasePaths, Cover, build_cover, check_link_edge, corner_table, invertible_quotient_check,
                              link_edge_paths, random_loop)
from cubefill.errors import InputError
from cubefill.grp_action import ComplexOfGroups
from cubefill.scwol_cat import Path
from cubefill.sageev_gen import cube_perm_action, diagonal_square, grid_d4, star

NAMES = ["s3-star", "grid-d4", "diagonal-square", "fan-6-2", "polygon-3"]


def _vertex_object(C):
    return next(v for v in range(C.n_objects)
                if len(C.lift_chain[v]) == 1 and C.X.dims[C.lift_chain[v][0]] == 0)


@pytest.mark.parametrize("name", NAMES)
def test_trivial_kernel_cover(by_name, name):
    C = ComplexOfGroups(by_name[name].action)
    cover = Cover(C)
    assert cover.check_covering()
    assert cover.check_deck_action()
    iq = invertible_quotient_check(cover)
    assert iq["ok"]
    for v in range(C.n_objects):
        assert iq["fibers"][v] == len(C.G) // len(C.local[v])


def test_cover_by_kernel():
    A = star(3)
    C = ComplexOfGroups(A)
    K = frozenset(A.G.elements)
    A3 = frozenset(g for g in A.G.elements if A.G.element_order(g) != 2)
    cover = build_cover(C, A3)
    assert cover.n_cosets == 2
    assert cover.check_covering() and cover.check_deck_action()
    assert invertible_quotient_check(cover)["ok"]
    assert invertible_quotient_check(build_cover(C, K))["ok"]


def test_cover_rejects_non_co_cubical_kernel():
    A = diagonal_square()
    with pytest.raises(InputError):
        build_cover(ComplexOfGroups(A), frozenset(A.G.elements))


@given(st.integers(0, 10**6), st.sampled_from(["s3-star", "grid-d4", "square-s2"]))
def test_loop_evaluation_is_a_homomorphism(by_name, seed, name):
    C = ComplexOfGroups(by_name[name].action)
    bp = BasePaths(C, v0=_vertex_object(C))
    rng = random.Random(seed)
    p = random_loop(bp, rng, rng.randint(0, 6))
    q = random_loop(bp, rng, rng.randint(0, 6))
    pq = Path(p.base, p.tokens + q.tokens)
    assert bp.eval_loop(pq) == C.G.m(bp.eval_loop(p), bp.eval_loop(q))


def test_base_paths_reach_every_object(by_name):
    C = ComplexOfGroups(by_name["grid-d4"].action)
    bp = BasePaths(C, v0=_vertex_object(C))
    for v in range(C.n_objects):
        assert bp.cover.lift(bp.c(v), (0, bp.v0))[-1] == (bp.x[v], v)
        assert bp.ell(Path(v)) == 0


def test_base_paths_need_a_vertex_object(by_name):
    C = ComplexOfGroups(by_name["s3-star"].action)
    bad = next(v for v in range(C.n_objects) if len(C.lift_chain[v]) > 1)
    with pytest.raises(InputError):
        BasePaths(C, v0=bad)


def test_link_edges_include_a_flipped_edge():
    for A in (diagonal_square(), grid_d4()):
        C = ComplexOfGroups(A)
        cover = Cover(C)
        E = link_edge_paths(C)
        assert {e.index for e in E.values()} == {1, 2}
        assert all(check_link_edge(C, e, cover) for e in E.values())


def test_corner_elements_formula_matches_evaluation():
    C = ComplexOfGroups(cube_perm_action(3))
    table = corner_table(C, Cover(C))
    assert len(table) == 8
    assert all(c.formula == c.by_eval for c in table.values())
