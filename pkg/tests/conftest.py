import pytest

from thcap.complexes import Graph, from_facets, simplex


# minimal 6-vertex triangulation of the real projective plane
RP2_FACETS = [
    (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
    (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
]


@pytest.fixture
def rp2():
    return from_facets([simplex(f) for f in RP2_FACETS])


@pytest.fixture
def edge_complex():
    return from_facets([simplex((0, 1))])


@pytest.fixture
def triangle_boundary():
    return from_facets([simplex(e) for e in [(1, 2), (1, 3), (2, 3)]])


@pytest.fixture
def full_triangle():
    return from_facets([simplex((1, 2, 3))])


def cycle_graph(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def c5():
    return cycle_graph(5)
