from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thcap.complexes import (
    Graph,
    SimplicialComplex,
    barycentric_1skeleton,
    connected_components,
    from_facets,
    induced_subcomplex,
    is_connected,
    join,
    one_skeleton,
    simplex,
    t_fold_join,
)
from oracles import all_faces


def small_complexes():
    """Random small complexes via candidate facet lists over 6 labels."""
    faces = st.lists(
        st.sets(st.integers(0, 5), min_size=1, max_size=4).map(lambda s: tuple(sorted(s))),
        min_size=1,
        max_size=8,
    )
    return faces.map(from_facets)


def test_from_facets_dedup_and_antichain():
    K = from_facets([(1, 2), (2, 3), (1, 2)])
    assert K.facets == ((1, 2), (2, 3))

    K = from_facets([(1, 2, 3), (1, 2)])
    assert K.facets == ((1, 2, 3),)


def test_from_facets_c5():
    edges = [((i, (i + 1) % 5)) for i in range(5)]
    K = from_facets([simplex(e) for e in edges])
    assert len(K.facets) == 5
    assert K.dim == 1
    assert len(K.vertices) == 5


@given(small_complexes())
@settings(max_examples=60)
def test_from_facets_idempotent(K):
    assert from_facets(K.facets) == K


def test_faces_match_bruteforce(rp2):
    expected = all_faces(rp2.facets)
    assert set(rp2.faces()) == expected
    assert rp2.f_vector() == [6, 15, 10]


def test_induced_subcomplex_edge(full_triangle):
    sub = induced_subcomplex(full_triangle, {1, 2})
    assert sub.facets == ((1, 2),)


def test_induced_subcomplex_identity(rp2):
    assert induced_subcomplex(rp2, rp2.vertices) == rp2


def test_induced_subcomplex_unknown_vertex(full_triangle):
    with pytest.raises(ValueError):
        induced_subcomplex(full_triangle, {1, 99})


@given(small_complexes(), st.sets(st.integers(0, 5)), st.sets(st.integers(0, 5)))
@settings(max_examples=60)
def test_induced_intersection_law(K, A, B):
    A &= set(K.vertices)
    B &= set(K.vertices)
    lhs = induced_subcomplex(K, A & B)
    rhs = induced_subcomplex(induced_subcomplex(K, A), A & B)
    assert lhs == rhs


def test_one_skeleton_triangle(full_triangle, triangle_boundary):
    g1 = one_skeleton(full_triangle)
    g2 = one_skeleton(triangle_boundary)
    assert g1 == g2
    assert len(g1.edges()) == 3


def test_one_skeleton_rp2_is_k6(rp2):
    g = one_skeleton(rp2)
    assert len(g.vertices) == 6
    assert len(g.edges()) == 15  # K6: every pair is an edge
    assert all(g.degree(v) == 5 for v in g.vertices)


def test_barycentric_single_edge(edge_complex):
    g = barycentric_1skeleton(edge_complex)
    assert set(g.vertices) == {"0", "1", "0|1"}
    assert sorted(map(tuple, (e for e in g.edges()))) == [("0", "0|1"), ("0|1", "1")]


def test_barycentric_full_triangle(full_triangle):
    g = barycentric_1skeleton(full_triangle)
    # faces of the triangle: 3 vertices + 3 edges + 1 top face
    assert len(g.vertices) == 7
    # containments: 6 vertex-edge + 3 vertex-top + 3 edge-top
    assert len(g.edges()) == 12


def test_barycentric_two_points():
    K = from_facets([(0,), (1,)])
    g = barycentric_1skeleton(K)
    assert len(g.vertices) == 2
    assert g.edges() == []


def test_join_points_give_edge():
    pt1 = from_facets([("a",)])
    pt2 = from_facets([("b",)])
    J = join(pt1, pt2)
    assert J.facets == (("a", "b"),)


def test_join_with_empty_is_identity(rp2):
    empty = from_facets([])
    assert join(rp2, empty) == rp2
    assert join(empty, rp2) == rp2


def test_join_tags_on_collision():
    s0 = from_facets([(0,), (1,)])
    J = join(s0, s0)
    assert len(J.vertices) == 4
    assert len(J.facets) == 4
    assert all(len(f) == 2 for f in J.facets)  # S0 * S0 = C4


@given(small_complexes(), small_complexes())
@settings(max_examples=40)
def test_join_face_count_law(K1, K2):
    J = join(K1, K2)
    # |faces+0(J)| = |faces+(K1)| * |faces+(K2)| counting the empty face
    assert J.face_count() + 1 == (K1.face_count() + 1) * (K2.face_count() + 1)


def test_t_fold_join_of_point_is_simplex():
    pt = from_facets([(0,)])
    J = t_fold_join(pt, 4)
    assert len(J.facets) == 1
    assert len(J.facets[0]) == 4


def test_connected_components_cycle(c5):
    assert connected_components(c5) == [[0, 1, 2, 3, 4]]


def test_connected_components_two_edges():
    K = from_facets([(0, 1), (2, 3)])
    assert connected_components(K) == [[0, 1], [2, 3]]
    assert not is_connected(K)


def test_mixed_label_rejected():
    with pytest.raises(TypeError):
        simplex([1.5, 2])


def test_complex_json_roundtrip(rp2):
    data = rp2.to_json()
    assert SimplicialComplex.from_json(data) == rp2
    again = SimplicialComplex.from_json(rp2.to_json())
    assert again.to_json() == data


def test_complex_json_isolated_vertices():
    data = {"vertices": [0, 1, 2], "facets": [[0, 1]]}
    K = SimplicialComplex.from_json(data)
    assert K.vertices == (0, 1, 2)
    assert (2,) in K.facets


def test_graph_json_roundtrip(c5):
    data = c5.to_json()
    assert Graph.from_json(data) == c5
    assert Graph.from_json(data).to_json() == data


def test_graph_rejects_loops():
    with pytest.raises(ValueError):
        Graph([0, 1], [(0, 0)])
