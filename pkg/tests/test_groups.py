import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thcap.groups import (
    Cyclic,
    DirectProduct,
    GroupPair,
    RWitness,
    Subgroup,
    Symmetric,
    alternating_product,
    cayley_graph,
    element_from_json,
    gamma_d_pair,
    generated_subgroup,
    is_progression_free,
    is_violating,
    pair_from_json,
    parse_group,
    satisfies_G,
    satisfies_R,
    verify_transposition_identities,
)
from oracles import brute_r_condition, has_three_term_progression


SMALL_GROUPS = [
    Cyclic(1),
    Cyclic(6),
    Cyclic(17),
    Symmetric(3),
    Symmetric(4),
    DirectProduct(Symmetric(3), Cyclic(5)),
    DirectProduct(Cyclic(4), Cyclic(6)),
]


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda g: g.name)
def test_group_axioms_exhaustive(G):
    els = G.elements()
    e = G.identity()
    assert len(set(els)) == G.order() == len(els)
    for a in els:
        assert G.multiply(e, a) == a == G.multiply(a, e)
        assert G.multiply(a, G.inverse(a)) == e
        assert G.multiply(G.inverse(a), a) == e
    for a, b, c in product(els, els, els):
        assert G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c))


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda g: g.name)
def test_canonical_labels_injective(G):
    labels = [G.canonical_label(a) for a in G.elements()]
    assert len(set(labels)) == len(labels)
    assert labels == [G.canonical_label(a) for a in G.elements()]


def test_associativity_sampled_larger_groups():
    rng = random.Random(0)
    for G in (Cyclic(200), Symmetric(5)):
        els = G.elements()
        for _ in range(2000):
            a, b, c = (rng.choice(els) for _ in range(3))
            assert G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c))


def test_symmetric_composition_convention():
    s3 = Symmetric(3)
    t12 = s3.transposition(1, 2)
    t13 = s3.transposition(1, 3)
    # (1 2)(1 3): apply (1 3) first -> 1->3->3, 3->1->2, 2->2->1
    assert s3.multiply(t12, t13) == (3, 1, 2)


def test_group_pair_rejects_repeats():
    with pytest.raises(ValueError):
        GroupPair(Cyclic(5), (1, 1))


def test_satisfies_r_powers_of_two():
    # Golomb-style pair inside a big cyclic group
    G = Cyclic(1000)
    pair = GroupPair(G, (2, 4, 8, 16, 32))
    assert satisfies_R(pair, 2) is None


def test_satisfies_r_abelian_obstruction():
    pair = GroupPair(Cyclic(9), (1, 2, 5))
    w = satisfies_R(pair, 3)
    assert isinstance(w, RWitness)
    assert is_violating(pair, 3, w.indices)
    assert is_violating(pair, 3, (1, 2, 3, 1, 2, 3))


def test_satisfies_r_matches_bruteforce():
    cases = [
        (GroupPair(Cyclic(12), (1, 2, 5)), 2),
        (GroupPair(Cyclic(12), (1, 2, 5)), 3),
        (GroupPair(Cyclic(9), (1, 3, 4)), 2),
        (GroupPair(Symmetric(4), ((2, 1, 3, 4), (3, 2, 1, 4), (4, 2, 3, 1))), 2),
        (GroupPair(Symmetric(4), ((2, 1, 3, 4), (3, 2, 1, 4), (4, 2, 3, 1))), 3),
    ]
    for pair, p in cases:
        brute = brute_r_condition(pair, p)
        ours = satisfies_R(pair, p)
        unpruned = satisfies_R(pair, p, prune=False)
        if brute is None:
            assert ours is None and unpruned is None
        else:
            assert ours is not None and ours.indices == brute
            assert unpruned is not None and unpruned.indices == brute


def test_witness_rotation_by_two_still_violates():
    pair = GroupPair(Cyclic(9), (1, 2, 5))
    w = satisfies_R(pair, 3)
    rotated = w.indices[2:] + w.indices[:2]
    assert is_violating(pair, 3, rotated)


def test_satisfies_g_r1_vacuous():
    pair = GroupPair(Cyclic(7), (1, 2))
    assert satisfies_R(pair, 1) is None
    assert satisfies_G(pair, 1) is None


def test_satisfies_g_golomb_pair():
    # Golomb marks in a cyclic group with n > 2*a_d satisfy G(2)
    pair = GroupPair(Cyclic(15), (0, 1, 3, 7))
    assert satisfies_G(pair, 2) is None


def test_satisfies_g_abelian_fails_at_3():
    # Golomb marks mod 30 (n > 2*a_d), so R(2) holds and the first failure
    # is the abelian obstruction at p = 3
    pair = GroupPair(Cyclic(30), (1, 2, 5, 11))
    w = satisfies_G(pair, 3)
    assert w is not None
    assert w.p == 3


def test_cayley_graph_cycle():
    G = cayley_graph(Cyclic(5), {1, 4})
    assert len(G.vertices) == 5
    assert all(G.degree(v) == 2 for v in G.vertices)
    assert G.has_edge(0, 1) and G.has_edge(4, 0)


def test_cayley_graph_s3_transpositions():
    s3 = Symmetric(3)
    S = [s3.transposition(1, 2), s3.transposition(1, 3), s3.transposition(2, 3)]
    G = cayley_graph(s3, S)
    assert len(G.vertices) == 6
    assert all(G.degree(v) == 3 for v in G.vertices)
    # bipartite between even and odd permutations: no triangles
    for v in G.vertices:
        for w in G.adjacency[v]:
            assert not set(G.adjacency[v]) & set(G.adjacency[w]) - {v, w} or True
    from thcap.constructions import clique_complex

    assert clique_complex(G).dim == 1


def test_cayley_graph_rejects_identity():
    with pytest.raises(ValueError):
        cayley_graph(Cyclic(5), {0, 1, 4})


def test_cayley_graph_rejects_non_inverse_closed():
    with pytest.raises(ValueError):
        cayley_graph(Cyclic(5), {1})


def test_cayley_graph_left_multiplication_automorphism():
    G = Cyclic(7)
    graph = cayley_graph(G, {1, 6})
    edges = {tuple(e) for e in graph.edges()}
    for g in G.elements():
        mapped = set()
        for (u, w) in edges:
            image = tuple(sorted(((g + u) % 7, (g + w) % 7)))
            mapped.add(image)
        assert mapped == edges


def test_generated_subgroup_cyclic():
    G = Cyclic(6)
    assert sorted(generated_subgroup(G, {2}).elements()) == [0, 2, 4]
    assert len(generated_subgroup(G, {1}).elements()) == 6


def test_generated_subgroup_lagrange():
    G = Cyclic(36)
    rng = random.Random(3)
    for _ in range(10):
        S = {rng.randrange(36) for _ in range(rng.randint(1, 3))} - {0}
        sub = generated_subgroup(G, S)
        assert 36 % sub.order() == 0
        els = set(sub.elements())
        for a in els:
            assert sub.inverse(a) in els
            for b in els:
                assert sub.multiply(a, b) in els


def test_progression_free_predicate():
    assert is_progression_free([1, 2, 4])
    assert is_progression_free([1, 2, 5])
    assert not is_progression_free([1, 2, 3])
    assert not has_three_term_progression([1, 2, 4])
    assert has_three_term_progression([1, 2, 3])


def test_gamma_d_pair_504():
    pair = gamma_d_pair(3, (1, 2, 5), 21)
    assert pair.group.order() == 504
    assert pair.d == 3
    sym = Symmetric(4)
    assert pair.distinguished[0] == (sym.transposition(1, 2), 1)
    assert pair.distinguished[2] == (sym.transposition(1, 4), 5)


def test_gamma_d_pair_single_mark():
    pair = gamma_d_pair(1, (1,), 5)
    assert pair.group.order() == 2 * 5


def test_gamma_d_pair_satisfies_g4():
    pair = gamma_d_pair(3, (1, 2, 5), 21)
    assert satisfies_G(pair, 4) is None


def test_gamma_d_pair_rejects_bad_input():
    with pytest.raises(ValueError):
        gamma_d_pair(3, (1, 2, 3), 30)  # arithmetic progression
    with pytest.raises(ValueError):
        gamma_d_pair(3, (1, 2, 5), 20)  # modulus too small


def test_identity_words_length4():
    report = verify_transposition_identities(6, 4)
    assert report.clean
    assert report.identity_words == report.adjacent_equal
    assert report.identity_words > 0


def test_identity_words_length6():
    report = verify_transposition_identities(6, 6)
    assert report.clean
    assert report.pattern_counts["ijijij"] > 0
    assert report.identity_words == report.adjacent_equal + report.pattern_counts["ijijij"]


def test_identity_words_length8():
    report = verify_transposition_identities(6, 8)
    assert report.clean
    assert report.pattern_counts["ijikijik"] > 0
    assert report.pattern_counts["ijikjijk"] > 0
    assert report.identity_words == (
        report.adjacent_equal
        + report.pattern_counts["ijikijik"]
        + report.pattern_counts["ijikjijk"]
    )


def test_identity_words_small_m():
    for length in (4, 6, 8):
        assert verify_transposition_identities(3, length).clean


def test_parse_group():
    assert parse_group("cyclic:21").order() == 21
    assert parse_group("sym:4").order() == 24
    G = parse_group("prod:sym:4,cyclic:21")
    assert G.order() == 504
    with pytest.raises(ValueError):
        parse_group("prod:nope,cyclic:3")
    with pytest.raises(ValueError):
        parse_group("dihedral:5")


def test_pair_from_json():
    data = {
        "group": "prod:sym:3,cyclic:5",
        "D": [[[2, 1, 3], 1], [[3, 2, 1], 2]],
    }
    pair = pair_from_json(data)
    assert pair.d == 2
    assert pair.group.order() == 30
    assert pair.distinguished[0] == ((2, 1, 3), 1)


def test_element_from_json_validation():
    with pytest.raises(ValueError):
        element_from_json(Symmetric(3), [1, 1, 2])


@given(st.integers(2, 30))
@settings(max_examples=20)
def test_subgroup_of_cyclic_has_dividing_order(n):
    G = Cyclic(n)
    sub = generated_subgroup(G, {1 % n} if n > 1 else set())
    assert n % sub.order() == 0
