import math

import pytest

from thcap.complexes import Graph, from_facets
from thcap.clusters import (
    ClusterError,
    cluster_girth,
    cluster_report,
    induced_part,
    shape_summary,
    verify_cluster,
    wedge_circle_count,
)
from thcap.constructions import GolombRuler, cyclic_extension, greedy_golomb, choose_modulus
from thcap.homology import homology, wedge_prediction
from conftest import cycle_graph


def test_c5_as_cluster_of_edges(c5):
    parts = [tuple(e) for e in c5.edges()]
    decomp = verify_cluster(c5, parts)
    assert decomp.k == 5
    assert cluster_girth(decomp) == 5
    assert wedge_circle_count(decomp) == 1


def test_cycle_girth_matches_graph_girth():
    for n in (3, 4, 6, 9):
        g = cycle_graph(n)
        decomp = verify_cluster(g, [tuple(e) for e in g.edges()])
        assert cluster_girth(decomp) == n


def test_all_pairs_cluster_has_girth_3():
    g = cycle_graph(5)
    parts = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    decomp = verify_cluster(g, parts)
    assert cluster_girth(decomp) == 3


def test_tree_cluster_girth_infinite():
    g = Graph(range(4), [(0, 1), (1, 2), (1, 3)])
    decomp = verify_cluster(g, [tuple(e) for e in g.edges()])
    assert cluster_girth(decomp) is math.inf
    assert wedge_circle_count(decomp) == 0


def test_invalid_cluster_overlap():
    K = from_facets([(1, 2, 3)])
    with pytest.raises(ClusterError) as err:
        verify_cluster(K, [(1, 2), (1, 2, 3)])
    assert any("share" in v for v in err.value.violations)


def test_invalid_cluster_uncovered_facet():
    K = from_facets([(1, 2, 3)])
    with pytest.raises(ClusterError) as err:
        verify_cluster(K, [(1, 2), (3,)])
    assert any("not contained" in v for v in err.value.violations)


def test_invalid_cluster_uncovered_vertex():
    g = Graph([0, 1, 2], [(0, 1)])
    with pytest.raises(ClusterError):
        verify_cluster(g, [(0, 1)])


def test_one_point_union_has_l_zero():
    K = from_facets([(0, 1), (0, 2), (0, 3)])
    decomp = verify_cluster(K, [(0, 1), (0, 2), (0, 3)])
    assert wedge_circle_count(decomp) == 0
    assert cluster_girth(decomp) is math.inf


def test_cyclic_extension_is_valid_cluster(triangle_boundary):
    ext = cyclic_extension(triangle_boundary, GolombRuler((0, 1, 3)), 7)
    decomp = verify_cluster(ext.complex, ext.parts)
    assert decomp.k == 7
    assert wedge_circle_count(decomp) == 8  # E=21, V=14, C=1
    for i in range(7):
        part = induced_part(decomp, i)
        assert len(part.facets) == 3


def test_homological_shadow_of_wedge_fact(rp2, triangle_boundary, edge_complex):
    """rank/torsion of H(host) match the sum over parts plus l circles."""
    for K in (edge_complex, triangle_boundary, rp2):
        ruler = greedy_golomb(len(K.vertices))
        n = choose_modulus(ruler)
        ext = cyclic_extension(K, ruler, n)
        decomp = verify_cluster(ext.complex, ext.parts)
        l = wedge_circle_count(decomp)
        predicted = wedge_prediction(homology(K), n, l)
        assert homology(ext.complex) == predicted


def test_wedge_circle_count_requires_connected_host():
    g = Graph(range(4), [(0, 1), (2, 3)])
    decomp = verify_cluster(g, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        wedge_circle_count(decomp)


def test_wedge_circle_count_requires_connected_parts():
    g = Graph(range(3), [(0, 1), (1, 2)])
    decomp = verify_cluster(g, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError):
        wedge_circle_count(decomp)


def test_l_depends_only_on_shape(c5):
    parts = [tuple(e) for e in c5.edges()]
    d1 = verify_cluster(c5, parts)
    relabeled = Graph([f"v{i}" for i in range(5)],
                      [(f"v{i}", f"v{(i + 1) % 5}") for i in range(5)])
    d2 = verify_cluster(relabeled, [tuple(e) for e in relabeled.edges()])
    assert shape_summary(d1) == shape_summary(d2)
    assert wedge_circle_count(d1) == wedge_circle_count(d2)


def test_cluster_report_valid(c5):
    decomp = verify_cluster(c5, [tuple(e) for e in c5.edges()])
    report = cluster_report(decomp)
    assert report["valid"] is True
    assert report["k"] == 5
    assert report["cluster_girth"] == 5
    assert report["l"] == 1


def test_cluster_report_invalid():
    K = from_facets([(1, 2, 3)])
    try:
        verify_cluster(K, [(1, 2), (1, 2, 3)])
    except ClusterError as err:
        report = cluster_report(err)
    assert report["valid"] is False
    assert report["violations"]
