import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from thcap.complexes import from_facets, join, simplex
from thcap.homology import (
    HomologyProfile,
    IntegerMatrix,
    betti_mod_p,
    boundary_composition_is_zero,
    boundary_matrix,
    homology,
    normalize_torsion,
    profile,
    rank_mod_p,
    smith_normal_form,
    universal_coefficients_consistent,
    wedge_prediction,
)
from oracles import invariant_factors_by_minors, rational_betti_numbers, rational_rank


def sympy_invariant_factors(dense):
    M = sympy.Matrix(dense)
    S = sympy_snf(M)
    return [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]


def test_boundary_of_edge():
    K = from_facets([("a", "b")])
    M = boundary_matrix(K, 1)
    assert M.to_dense() == [[-1], [1]]


def test_boundary_out_of_range(full_triangle):
    with pytest.raises(ValueError):
        boundary_matrix(full_triangle, 3)


def test_boundary_composition_zero(full_triangle, rp2):
    assert boundary_composition_is_zero(full_triangle, 2)
    assert boundary_composition_is_zero(rp2, 2)


def test_boundary_rank_triangle_boundary(triangle_boundary):
    M = boundary_matrix(triangle_boundary, 1)
    assert rational_rank(M.to_dense()) == 2
    _, rank = smith_normal_form(M)
    assert rank == 2


def test_snf_diag():
    M = IntegerMatrix.from_dense([[2, 0], [0, 3]])
    factors, rank = smith_normal_form(M)
    assert factors == [1, 6]
    assert rank == 2
    assert invariant_factors_by_minors([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero_matrix():
    M = IntegerMatrix.from_dense([[0, 0], [0, 0]])
    factors, rank = smith_normal_form(M)
    assert factors == []
    assert rank == 0


@pytest.mark.parametrize("seed", range(8))
def test_snf_random_matches_minors_oracle(seed):
    rng = random.Random(seed)
    rows = rng.randint(1, 4)
    cols = rng.randint(1, 4)
    dense = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
    factors, rank = smith_normal_form(IntegerMatrix.from_dense(dense))
    assert factors == invariant_factors_by_minors(dense)
    assert rank == rational_rank(dense)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


@pytest.mark.parametrize("seed", range(6))
def test_snf_random_matches_sympy(seed):
    rng = random.Random(100 + seed)
    rows = rng.randint(2, 7)
    cols = rng.randint(2, 7)
    dense = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
    factors, _ = smith_normal_form(IntegerMatrix.from_dense(dense))
    assert factors == sympy_invariant_factors(dense)


def test_snf_rp2_boundary2(rp2):
    M = boundary_matrix(rp2, 2)
    factors, rank = smith_normal_form(M)
    assert rank == 10
    assert sorted(f for f in factors if f > 1) == [2]
    assert factors == sympy_invariant_factors(M.to_dense())


def test_rank_mod_p():
    dense = [[2, 4], [1, 2]]
    M = IntegerMatrix.from_dense(dense)
    assert rank_mod_p(M, 2) == 1
    assert rank_mod_p(M, 3) == 1
    M2 = IntegerMatrix.from_dense([[1, 0], [0, 2]])
    assert rank_mod_p(M2, 2) == 1
    assert rank_mod_p(M2, 3) == 2


def test_homology_circle(triangle_boundary):
    prof = homology(triangle_boundary)
    assert prof == profile([(1, ()), (1, ())])
    assert prof.paper_tuple() == "(Z, Z, 0, ...)"


def test_homology_rp2(rp2):
    prof = homology(rp2)
    assert prof == profile([(1, ()), (0, (2,)), (0, ())])
    assert prof.paper_tuple() == "(Z, Z/2, 0, ...)"


def test_homology_sphere():
    # boundary of the tetrahedron
    K = from_facets([simplex(f) for f in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]])
    assert homology(K) == profile([(1, ()), (0, ()), (1, ())])


def test_homology_two_components():
    K = from_facets([(0, 1), (2, 3)])
    assert homology(K).betti(0) == 2


def test_homology_matches_rational_oracle(rp2, triangle_boundary):
    for K in (rp2, triangle_boundary):
        prof = homology(K)
        assert [b for b, _ in prof.groups] == rational_betti_numbers(K.facets)


def test_join_of_spheres():
    s0 = from_facets([(0,), (1,)])
    c4 = join(s0, s0)
    assert homology(c4) == profile([(1, ()), (1, ())])


def test_homology_relabel_invariance(rp2):
    rng = random.Random(7)
    perm = list(rp2.vertices)
    rng.shuffle(perm)
    relabeled = rp2.relabel(dict(zip(rp2.vertices, perm)))
    assert homology(relabeled) == homology(rp2)
    as_strings = rp2.relabel({v: f"w{v}" for v in rp2.vertices})
    assert homology(as_strings) == homology(rp2)


def test_universal_coefficients(rp2, triangle_boundary):
    for K in (rp2, triangle_boundary):
        prof = homology(K)
        assert universal_coefficients_consistent(K, prof, 2)
        assert universal_coefficients_consistent(K, prof, 3)
    # mod 2, RP2 gains betti in dims 1 and 2
    assert betti_mod_p(rp2, 2) == [1, 1, 1]
    assert betti_mod_p(rp2, 3) == [1, 0, 0]


def test_normalize_torsion():
    assert normalize_torsion([2, 3]) == (6,)
    assert normalize_torsion([2, 4, 3]) == (2, 12)
    assert normalize_torsion([]) == ()
    assert normalize_torsion([2, 2, 2]) == (2, 2, 2)


def test_wedge_prediction_identity(rp2):
    prof = homology(rp2)
    assert wedge_prediction(prof, 1, 0) == prof


def test_wedge_prediction_edge_case():
    edge_prof = profile([(1, ())])
    pred = wedge_prediction(edge_prof, 3, 1)
    assert pred == profile([(1, ()), (1, ())])


def test_wedge_prediction_rp2(rp2):
    pred = wedge_prediction(homology(rp2), 41, 165)
    assert pred.betti(1) == 165
    assert pred.torsion(1) == tuple([2] * 41)
    assert pred.betti(2) == 0


def test_wedge_prediction_requires_connected_base():
    with pytest.raises(ValueError):
        wedge_prediction(profile([(2, ())]), 2, 0)


def test_profile_json_roundtrip(rp2):
    prof = homology(rp2)
    assert HomologyProfile.from_json(prof.to_json()) == prof


def test_profile_equality_ignores_trailing_zeros():
    assert profile([(1, ()), (1, ())]) == profile([(1, ()), (1, ()), (0, ())])
