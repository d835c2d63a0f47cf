import pytest

from thcap.complexes import from_facets
from thcap.constructions import (
    GolombRuler,
    closed_neighbourhood_complex,
    clique_complex,
    cyclic_extension,
)
from thcap.groups import Cyclic
from thcap.homology import homology, profile
from thcap.transitivity import (
    NOT_APPLICABLE,
    OBSTRUCTED,
    GroupAction,
    is_facet_transitive,
    is_vertex_transitive,
    left_multiplication_action,
    lefschetz_obstruction,
    rotation_action,
    verify_simplicial_action,
)
from conftest import cycle_graph


def test_cyclic_extension_translation_action(triangle_boundary):
    ext = cyclic_extension(triangle_boundary, GolombRuler((0, 1, 3)), 7)
    action = rotation_action(7)
    assert verify_simplicial_action(ext.complex, action)
    assert is_vertex_transitive(ext.complex, action)
    # the 21 edge-facets fall into three rotation orbits: vertex-transitive
    # does not imply facet-transitive for cyclic extensions
    assert not is_facet_transitive(ext.complex, action)


def test_left_multiplication_action_on_cayley():
    from thcap.groups import cayley_graph

    G = Cyclic(6)
    graph = cayley_graph(G, {1, 5})
    K = clique_complex(graph)
    action = left_multiplication_action(G)
    assert verify_simplicial_action(K, action)
    assert is_vertex_transitive(K, action)


def test_broken_action_detected():
    # a path 1-2-3: swapping the endpoints while fixing the middle is a
    # graph automorphism, but swapping 2 and 3 instead breaks the edge {1,2}
    K = from_facets([(1, 2), (2, 3)])
    swap = {1: 1, 2: 3, 3: 2}
    action = GroupAction(Cyclic(2), lambda g, v: swap[v] if g else v)
    assert not verify_simplicial_action(K, action)


def test_action_leaving_vertex_set():
    K = from_facets([(1, 2)])
    action = GroupAction(Cyclic(2), lambda g, v: v + g)
    with pytest.raises(ValueError):
        verify_simplicial_action(K, action)


def test_rotation_not_vertex_transitive_on_subset():
    # rotation by 2 on Z/6 has two orbits on a 6-cycle complex
    K = from_facets([(i, (i + 1) % 6) for i in range(6)])
    even_rotation = GroupAction(Cyclic(3), lambda g, v: (v + 2 * g) % 6)
    assert verify_simplicial_action(K, even_rotation)
    assert not is_vertex_transitive(K, even_rotation)


def test_closed_neighbourhood_facet_transitive(c5):
    N = closed_neighbourhood_complex(c5)
    action = rotation_action(5)
    assert verify_simplicial_action(N, action)
    assert is_vertex_transitive(N, action)
    assert is_facet_transitive(N, action)


def test_disjoint_union_not_transitive():
    K = from_facets([(0, 1), (2, 3)])
    action = GroupAction(Cyclic(2), lambda g, v: v ^ g)  # swaps 0<->1, 2<->3
    assert verify_simplicial_action(K, action)
    assert not is_vertex_transitive(K, action)


def test_lefschetz_rp2(rp2):
    assert lefschetz_obstruction(homology(rp2)) == OBSTRUCTED


def test_lefschetz_s2_wedge_s1():
    prof = profile([(1, ()), (1, ()), (1, ())])
    assert lefschetz_obstruction(prof) == OBSTRUCTED


def test_lefschetz_torus_not_applicable():
    torus = profile([(1, ()), (2, ()), (1, ())])
    assert lefschetz_obstruction(torus) == NOT_APPLICABLE


def test_lefschetz_circle_not_applicable(triangle_boundary):
    # chi = 0 is even
    assert lefschetz_obstruction(homology(triangle_boundary)) == NOT_APPLICABLE


def test_lefschetz_point_not_applicable():
    assert lefschetz_obstruction(profile([(1, ())])) == NOT_APPLICABLE


def test_lefschetz_ignores_torsion(rp2):
    base = homology(rp2)
    perturbed = profile([(b, (3,) if i == 2 else t) for i, (b, t) in enumerate(base.groups)])
    assert lefschetz_obstruction(perturbed) == lefschetz_obstruction(base)
