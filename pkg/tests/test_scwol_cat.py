import pytest
from hypothesis import given, strategies as st

from cubefill.acceptance import brute_chain_count
from cubefill.cube_core import from_cubes
from cubefill.errors import InputError
from cubefill.scwol_cat import (Path, concat, elementary_homotopy, endpoints,
                                idealize, non_backtracking, realization_1skeleton, reverse)


def grid(a, b):
    v = lambda i, j: f"{i},{j}"
    return from_cubes([[v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)] for i in range(a) for j in range(b)])


def test_edge_idealization():
    S = idealize(from_cubes([["a", "b"]])).scwol
    assert S.n_objects == 5
    assert len(S.nontrivial()) == 4
    assert S.check_scwol()


def test_square_idealization_matches_brute_count():
    X = from_cubes([["a", "b", "c", "d"]])
    S = idealize(X).scwol
    assert S.n_objects == brute_chain_count(X) == 33
    assert S.check_scwol()


@given(st.integers(1, 3), st.integers(1, 2))
def test_grid_idealization_matches_brute_count(a, b):
    X = grid(a, b)
    I = idealize(X)
    assert I.scwol.n_objects == brute_chain_count(X)
    assert I.scwol.check_scwol()


def test_composition_is_associative_on_square():
    S = idealize(from_cubes([["a", "b", "c", "d"]])).scwol
    n = 0
    for a, b, ab in S.composable_pairs():
        for c in S.in_arrows[S.src(b)]:
            assert S.compose(ab, c) == S.compose(a, S.compose(b, c))
            n += 1
    assert n > 0


def test_realization_graph_counts_arrows():
    S = idealize(from_cubes([["a", "b"]])).scwol
    g = realization_1skeleton(S)
    assert g.number_of_nodes() == 5
    assert g.number_of_edges() == 4


def test_path_concat_and_reverse():
    S = idealize(from_cubes([["a", "b"]])).scwol
    a = S.nontrivial()[0]
    p = Path(S.src(a), ((a, -1),))
    assert endpoints(S, p) == (S.src(a), S.dst(a))
    q = concat(S, p, reverse(S, p))
    assert endpoints(S, q) == (S.src(a), S.src(a))
    assert not non_backtracking(q)


def test_concat_rejects_mismatched_ends():
    S = idealize(from_cubes([["a", "b"]])).scwol
    a = S.nontrivial()[0]
    p = Path(S.src(a), ((a, -1),))
    with pytest.raises(InputError):
        concat(S, p, p)


def test_backtrack_move_cancels():
    S = idealize(from_cubes([["a", "b"]])).scwol
    a = S.nontrivial()[0]
    p = Path(S.src(a), ((a, -1), (a, 1)))
    q = elementary_homotopy(S, p, "cancel", 0)
    assert len(q) == 0 and q.base == p.base
