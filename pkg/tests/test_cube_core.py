import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubefill.cube_core import from_cubes, is_cat0, is_npc, link_loops, simply_connected, validate
from cubefill.errors import ComplexError
from cubefill.sageev_gen import open_corner


def grid(a, b):
    v = lambda i, j: f"{i},{j}"
    return from_cubes([[v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)] for i in range(a) for j in range(b)])


def test_square_has_nine_cells():
    X = from_cubes([["a", "b", "c", "d"]])
    assert len(X) == 9
    assert X.counts() == [4, 4, 1]
    assert X.euler() == 1
    assert len(X.hyperplanes()) == 2


def test_single_vertex_complex():
    X = validate({"vertices": ["p"], "cubes": [{"dim": 0, "corners": {"": "p"}}]})
    assert X.counts() == [1]
    assert is_cat0(X)


def test_faces_include_the_cell_and_cofaces_are_strict():
    X = from_cubes([["a", "b", "c", "d"]])
    top = X.cells_of_dim(2)[0]
    assert top in X.faces[top]
    assert len(X.faces[top]) == 9
    assert all(top not in X.cofaces[c] or c != top for c in range(len(X)))
    assert X.cofaces[top] == []


def test_corner_collision_rejected():
    with pytest.raises(ComplexError):
        from_cubes([["a", "b", "c", "a"]])


def test_inconsistent_edge_structure_rejected():
    # same corner set, but a and d are adjacent in one and diagonal in the other
    with pytest.raises(ComplexError):
        from_cubes([["a", "b", "c", "d"], ["a", "d", "c", "b"]])


def test_missing_face_only_in_strict_mode():
    raw = {"cubes": [{"dim": 2, "corners": {"00": "a", "10": "b", "01": "c", "11": "d"}}]}
    assert len(validate(raw)) == 9
    with pytest.raises(ComplexError) as e:
        validate(raw, close=False)
    assert e.value.kind == "missing face"


def test_malformed_bitstring_has_location():
    with pytest.raises(ComplexError) as e:
        validate({"cubes": [{"dim": 1, "corners": {"0": "a", "2": "b"}}]})
    assert e.value.where == "cubes[0].corners"


def test_open_corner_fails_link_condition():
    X = open_corner()
    v = is_npc(X)
    assert not v
    assert v.witness["length"] == 3
    o = X.name_index["o"]
    assert link_loops(X, o) is not None


def test_boundary_of_square_is_not_cat0():
    X = from_cubes([["a", "b"], ["b", "d"], ["d", "c"], ["c", "a"]])
    assert is_npc(X)
    assert not is_cat0(X)


@given(st.integers(1, 4), st.integers(1, 4))
def test_grids_are_cat0(a, b):
    X = grid(a, b)
    assert X.counts() == [(a + 1) * (b + 1), a * (b + 1) + b * (a + 1), a * b]
    assert X.euler() == 1
    assert is_cat0(X)
    assert len(X.hyperplanes()) == a + b


@given(st.integers(1, 4), st.integers(1, 4))
def test_distance_matrix_matches_networkx(a, b):
    X = grid(a, b)
    D = X.distance_matrix()
    assert np.array_equal(D, D.T)
    sk = X.skeleton()
    ref = dict(nx.all_pairs_shortest_path_length(sk))
    for u in ref:
        for v, d in ref[u].items():
            assert D[u, v] == d


def test_simply_connected_square_and_not_the_circle():
    verdict, _ = simply_connected(from_cubes([["a", "b", "c", "d"]]))
    assert verdict == "verified"
    verdict, info = simply_connected(from_cubes([["a", "b"], ["b", "d"], ["d", "c"], ["c", "a"]]))
    assert verdict == "refuted"
    assert info["h1_free_rank"] == 1
