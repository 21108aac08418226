import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cubefill.cube_core import is_cat0, is_npc
from cubefill.errors import InputError
from cubefill.sageev_gen import (Wallspace, corpus, crossing_walls, dual_complex, grid_walls, manifest_digest,
                                 nested_walls, open_corner, polygon_walls, wallspace_from_dict)


@given(st.integers(1, 4))
def test_crossing_walls_give_a_cube(n):
    X = dual_complex(crossing_walls(n)).X
    assert X.counts() == [math.comb(n, k) * 2 ** (n - k) for k in range(n + 1)]
    assert nx.is_isomorphic(X.skeleton(), nx.hypercube_graph(n))


@given(st.integers(1, 6))
def test_nested_walls_give_a_path(n):
    D = dual_complex(nested_walls(n))
    assert D.X.counts() == [n + 1, n]
    assert nx.is_isomorphic(D.X.skeleton(), nx.path_graph(n + 1))
    assert len(D.action.G) == 2


@given(st.integers(1, 3), st.integers(1, 3))
def test_grid_walls_give_a_grid(a, b):
    X = dual_complex(grid_walls(a, b)).X
    assert nx.is_isomorphic(X.skeleton(), nx.grid_2d_graph(a + 1, b + 1))
    assert is_cat0(X)


def test_polygon_walls():
    D = dual_complex(polygon_walls(3))
    assert D.X.counts() == [8, 12, 6, 1]
    assert len(D.action.G) == 12
    assert len(D.X.hyperplanes()) == 3


def test_principal_orientations_are_vertices():
    D = dual_complex(nested_walls(3))
    names = set(D.X.names)
    assert set(D.point_vertex) == set(D.W.points)
    assert set(D.point_vertex.values()) <= names


def test_corpus_is_deterministic_and_cat0():
    a, b = corpus(0), corpus(0)
    assert manifest_digest(a) == manifest_digest(b)
    assert manifest_digest(a) != manifest_digest(corpus(1))
    assert len(a) == 23
    assert all(is_cat0(it.X) for it in a)
    assert all(it.kernels[0] == frozenset({0}) for it in a)


def test_corpus_rejects_unknown_profile():
    with pytest.raises(InputError):
        corpus(0, "huge")


def test_open_corner_is_not_npc():
    assert not is_npc(open_corner())


@pytest.mark.parametrize("raw", [
    {"points": ["a", "a"], "walls": []},
    {"points": ["a", "b"], "walls": [["c"]]},
    {"points": ["a", "b"], "walls": [["a", "b"]]},
    {"points": ["a", "b"], "walls": [["b"], ["a"]]},
    {"points": ["a", "b", "c"], "walls": [["c"]], "symmetries": [{"a": "b"}]},
    {"points": ["a", "b", "c"], "walls": [["c"]], "symmetries": [{"a": "c", "c": "b"}]},
    {"walls": []},
])
def test_malformed_wallspaces(raw):
    with pytest.raises(InputError):
        wallspace_from_dict(raw)


def test_wallspace_roundtrip():
    W = polygon_walls(2)
    W2 = wallspace_from_dict(W.to_dict())
    assert W2.walls == W.walls
    assert Wallspace(["x", "y"], [frozenset({"x"})]).walls == [frozenset({"y"})]
