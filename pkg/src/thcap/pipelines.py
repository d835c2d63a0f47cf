"""End-to-end verification pipelines.

Each pipeline builds a transitive complex from a base complex K, verifies
the cluster structure, predicts the homology of the result from the
homology of K and the shape of the cluster, computes the homology exactly,
and records one verdict per check.  A report passes only when predicted and
computed profiles agree exactly and every structural check holds.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from .complexes import Graph, SimplicialComplex, from_facets, simplex
from .clusters import ClusterDecomposition, cluster_girth, verify_cluster, wedge_circle_count
from .constructions import (
    CyclicExtension,
    GolombRuler,
    choose_modulus,
    clique_complex,
    closed_neighbourhood_complex,
    cyclic_extension,
    gamma_d_pair_defaults,
    greedy_golomb,
    group_extension_graph,
    identity_component,
    induced_subgraph,
    k_family_complex,
    open_neighbourhood_complex,
    power_cycle,
)
from .complexes import barycentric_1skeleton
from .groups import gamma_d_pair, satisfies_G
from .homology import (
    HomologyProfile,
    boundary_composition_is_zero,
    homology,
    profile,
    universal_coefficients_consistent,
    wedge_prediction,
)
from .morse import collapse_critical, neighbourhood_matching
from .transitivity import (
    NOT_APPLICABLE,
    is_facet_transitive,
    is_vertex_transitive,
    left_multiplication_action,
    lefschetz_obstruction,
    rotation_action,
    verify_simplicial_action,
)

DEFAULT_FACE_CAP = 2 ** 20
DEFAULT_ELEMENT_CAP = 10 ** 4
FACE_CAP_ENV = "THCAP_FACES"


class CapExceeded(RuntimeError):
    """Instance too large for the configured cap; not a verification
    failure."""


def default_face_cap() -> int:
    value = os.environ.get(FACE_CAP_ENV)
    return int(value) if value else DEFAULT_FACE_CAP


def ensure_face_cap(K: SimplicialComplex, cap: int, what: str) -> None:
    """Reject complexes whose total face count exceeds the cap.

    The cheap upper bound sum(2^|F|) is tried first so that oversized
    instances are refused without materializing anything.
    """
    bound = sum(2 ** len(F) for F in K.facets)
    if bound <= cap:
        return
    count = 0
    seen = set()
    from itertools import combinations

    for F in K.facets:
        for k in range(1, len(F) + 1):
            for f in combinations(F, k):
                if f not in seen:
                    seen.add(f)
                    count += 1
                    if count > cap:
                        raise CapExceeded(
                            f"{what} has more than {cap} faces; "
                            f"raise --face-cap or {FACE_CAP_ENV}, or use a smaller base complex")


@dataclass
class PipelineReport:
    pipeline: str
    parameters: dict
    n: int
    l: int
    cluster_girth: object
    predicted: HomologyProfile | None
    computed: dict
    verdicts: dict
    wall_time_s: float = 0.0
    notes: list = field(default_factory=list)
    decomp: ClusterDecomposition | None = field(default=None, repr=False)  # for figures

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        import math

        return {
            "pipeline": self.pipeline,
            "parameters": self.parameters,
            "n": self.n,
            "l": self.l,
            "cluster_girth": "inf" if self.cluster_girth == float("inf") else self.cluster_girth,
            "predicted": self.predicted.to_json() if self.predicted else None,
            "predicted_tuple": self.predicted.paper_tuple() if self.predicted else None,
            "computed": {k: v.to_json() for k, v in self.computed.items()},
            "computed_tuples": {k: v.paper_tuple() for k, v in self.computed.items()},
            "verdicts": self.verdicts,
            "pass": self.passed,
            "notes": self.notes,
            "wall_time_s": round(self.wall_time_s, 3),
        }


def homology_self_checks(K: SimplicialComplex, prof: HomologyProfile, verdicts: dict, tag: str) -> None:
    """Boundary law, Euler characteristic, universal coefficients at 2, 3."""
    verdicts[f"{tag}_boundary_law"] = all(
        boundary_composition_is_zero(K, i) for i in range(2, K.dim + 1)
    ) if K.dim >= 2 else True
    verdicts[f"{tag}_euler_consistent"] = (
        K.euler_characteristic() == prof.euler_characteristic()
    )
    verdicts[f"{tag}_ucoeff_p2"] = universal_coefficients_consistent(K, prof, 2)
    verdicts[f"{tag}_ucoeff_p3"] = universal_coefficients_consistent(K, prof, 3)


def _check_parts_isomorphic(ext: CyclicExtension, K: SimplicialComplex) -> bool:
    from .complexes import induced_subcomplex

    n = ext.modulus
    for x in range(n):
        mapping = {v: (x + a) % n for v, a in zip(ext.vertex_order, ext.ruler.marks)}
        if induced_subcomplex(ext.complex, ext.parts[x]) != K.relabel(mapping):
            return False
    return True


def pipeline_cyclic(K: SimplicialComplex, ruler: GolombRuler | None = None,
                    modulus: int | None = None, face_cap: int | None = None) -> PipelineReport:
    """Golomb ruler -> modulus -> cyclic extension -> cluster checks ->
    exact homology against the wedge prediction -> transitivity."""
    t0 = time.perf_counter()
    cap = face_cap if face_cap is not None else default_face_cap()
    if ruler is None:
        ruler = greedy_golomb(len(K.vertices))
    if modulus is None:
        modulus = choose_modulus(ruler)

    base_bound = sum(2 ** len(F) for F in K.facets) * (modulus)
    if base_bound > cap * 4:
        raise CapExceeded(
            f"cyclic extension would have around {base_bound} candidate faces; cap is {cap}")
    ext = cyclic_extension(K, ruler, modulus)
    ensure_face_cap(ext.complex, cap, "cyclic extension")

    verdicts: dict = {}
    decomp = verify_cluster(ext.complex, ext.parts)
    verdicts["cluster_valid"] = True
    girth = cluster_girth(decomp)
    verdicts["parts_isomorphic_to_base"] = _check_parts_isomorphic(ext, K)

    l = wedge_circle_count(decomp)
    base_profile = homology(K)
    predicted = wedge_prediction(base_profile, modulus, l)
    computed = homology(ext.complex)
    verdicts["homology_matches_prediction"] = computed == predicted

    action = rotation_action(modulus)
    verdicts["action_simplicial"] = verify_simplicial_action(ext.complex, action)
    verdicts["vertex_transitive"] = is_vertex_transitive(ext.complex, action)
    verdicts["lefschetz_guard"] = lefschetz_obstruction(computed) == NOT_APPLICABLE
    homology_self_checks(ext.complex, computed, verdicts, "extension")

    return PipelineReport(
        pipeline="cyclic",
        parameters={
            "base_vertices": list(K.vertices),
            "base_facets": [list(f) for f in K.facets],
            "ruler": list(ruler.marks),
            "modulus": modulus,
        },
        n=modulus,
        l=l,
        cluster_girth=girth,
        predicted=predicted,
        computed={"extension": computed},
        verdicts=verdicts,
        wall_time_s=time.perf_counter() - t0,
        decomp=decomp,
    )


def _parts_are_copies_of_h(G: Graph, parts, part_reps, pair, H: Graph, sub_labels) -> bool:
    """Each part induces a copy of H under v_i -> gamma*gamma_i."""
    gp = pair.group
    gamma_of = dict(zip(H.vertices, pair.distinguished))
    reps_by_part = dict(zip(parts, part_reps))
    for part in parts:
        if not set(part) <= sub_labels:
            continue
        gamma = reps_by_part[part]
        mapping = {v: gp.canonical_label(gp.multiply(gamma, gamma_of[v])) for v in H.vertices}
        induced = induced_subgraph(G, part)
        expected_edges = {
            simplex((mapping[u], mapping[w])) for (u, w) in (tuple(e) for e in H.edges())
        }
        if set(map(tuple, induced.edges())) != expected_edges:
            return False
    return True


def pipeline_cayley(K: SimplicialComplex, mode: str = "both",
                    a: tuple | None = None, m: int | None = None,
                    face_cap: int | None = None,
                    element_cap: int | None = None) -> PipelineReport:
    """Barycentric 1-skeleton -> explicit G(4) pair -> group extension ->
    identity component -> cluster checks -> clique and/or closed
    neighbourhood complexes, homology against the shared wedge prediction,
    Morse collapse cross-check, and facet-transitivity in closed mode."""
    if mode not in ("clique", "closed-neighbourhood", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    cap = face_cap if face_cap is not None else default_face_cap()
    ecap = element_cap if element_cap is not None else DEFAULT_ELEMENT_CAP

    H = barycentric_1skeleton(K)
    d_prime = len(H.vertices)
    if a is None or m is None:
        a_def, m_def = gamma_d_pair_defaults(d_prime)
        a = a if a is not None else a_def
        m = m if m is not None else m_def
    import math

    order = math.factorial(d_prime + 1) * m
    if order > ecap:
        raise CapExceeded(
            f"group order (d'+1)! * m = {order} exceeds the element cap {ecap}; "
            "use a smaller base complex or raise --element-cap")

    pair = gamma_d_pair(d_prime, a, m)
    verdicts: dict = {}
    verdicts["pair_satisfies_g4"] = satisfies_G(pair, 4) is None

    ext = group_extension_graph(H, pair)
    sub, G, parts = identity_component(ext)
    n = sub.order()
    sub_labels = set(G.vertices)

    decomp = verify_cluster(G, parts)
    verdicts["cluster_valid"] = True
    verdicts["component_is_cluster_of_n_parts"] = len(parts) == n
    girth = cluster_girth(decomp)
    verdicts["cluster_girth_at_least_5"] = girth >= 5
    verdicts["parts_isomorphic_to_h"] = _parts_are_copies_of_h(
        G, ext.parts, ext.part_reps, pair, H, sub_labels)

    l = wedge_circle_count(decomp)
    base_profile = homology(K)
    predicted = wedge_prediction(base_profile, n, l)

    computed: dict = {}
    action = left_multiplication_action(sub)

    if mode in ("clique", "both"):
        Cl = clique_complex(G)
        ensure_face_cap(Cl, cap, "clique complex")
        prof = homology(Cl)
        computed["clique"] = prof
        verdicts["clique_homology_matches_prediction"] = prof == predicted
        try:
            verify_cluster(Cl, parts)
            verdicts["clique_is_cluster_of_parts"] = True
        except Exception:
            verdicts["clique_is_cluster_of_parts"] = False
        verdicts["clique_vertex_transitive"] = (
            verify_simplicial_action(Cl, action) and is_vertex_transitive(Cl, action))
        verdicts["clique_lefschetz_guard"] = lefschetz_obstruction(prof) == NOT_APPLICABLE
        homology_self_checks(Cl, prof, verdicts, "clique")

    if mode in ("closed-neighbourhood", "both"):
        N = closed_neighbourhood_complex(G)
        ensure_face_cap(N, cap, "closed neighbourhood complex")
        prof = homology(N)
        computed["closed_neighbourhood"] = prof
        verdicts["closed_homology_matches_prediction"] = prof == predicted

        matching = neighbourhood_matching(G, decomp)
        verdicts["matching_counts"] = matching.face_count() == N.face_count()
        critical = collapse_critical(N, matching)
        verdicts["collapse_preserves_homology"] = homology(critical) == prof
        try:
            verify_cluster(critical, parts)
            verdicts["critical_is_cluster_of_parts"] = True
        except Exception:
            verdicts["critical_is_cluster_of_parts"] = False

        verdicts["closed_action_simplicial"] = verify_simplicial_action(N, action)
        verdicts["closed_vertex_transitive"] = is_vertex_transitive(N, action)
        verdicts["closed_facet_transitive"] = is_facet_transitive(N, action)
        verdicts["closed_lefschetz_guard"] = lefschetz_obstruction(prof) == NOT_APPLICABLE
        homology_self_checks(N, prof, verdicts, "closed")

    return PipelineReport(
        pipeline="cayley",
        parameters={
            "base_vertices": list(K.vertices),
            "base_facets": [list(f) for f in K.facets],
            "d_prime": d_prime,
            "a": list(a),
            "m": m,
            "group": pair.group.name,
            "group_order": order,
            "subgroup_order": n,
            "mode": mode,
        },
        n=n,
        l=l,
        cluster_girth=girth,
        predicted=predicted,
        computed=computed,
        verdicts=verdicts,
        wall_time_s=time.perf_counter() - t0,
        decomp=decomp,
    )


K_FAMILY_TORSION_NOTE = (
    "the stated (Z, Z+Z/2, 0, ...) profile holds for k >= 4; for k = 2, 3 the "
    "construction yields different homology (recorded, not asserted) and an "
    "exhaustive search shows no translate family on Z/10 or Z/14 attains it")


def reproduce_examples() -> dict:
    """Build the torsion example families, compare homology to the known
    tuples, and verify rotation transitivity."""
    t0 = time.perf_counter()
    instances = []
    overall = True

    target_open = profile([(1, ()), (1, ()), (0, (2,))])
    for nn in (13, 15):
        G = power_cycle(nn, 3)
        N = open_neighbourhood_complex(G)
        prof = homology(N)
        action = rotation_action(nn)
        entry = {
            "name": f"N(C_{nn}^3)",
            "expected": target_open.paper_tuple(),
            "computed": prof.paper_tuple(),
            "homology_matches": prof == target_open,
            "vertex_transitive": (verify_simplicial_action(N, action)
                                  and is_vertex_transitive(N, action)),
            "facet_transitive": is_facet_transitive(N, action),
            "asserted": True,
        }
        entry["pass"] = (entry["homology_matches"] and entry["vertex_transitive"]
                         and entry["facet_transitive"])
        overall &= entry["pass"]
        instances.append(entry)

    target_k = profile([(1, ()), (1, (2,))])
    for k in range(2, 7):
        K = k_family_complex(k)
        nn = 4 * k + 2
        prof = homology(K)
        action = rotation_action(nn)
        asserted = k >= 4
        entry = {
            "name": f"K_{nn} (k={k})",
            "expected": target_k.paper_tuple(),
            "computed": prof.paper_tuple(),
            "homology_matches": prof == target_k,
            "vertex_transitive": (verify_simplicial_action(K, action)
                                  and is_vertex_transitive(K, action)),
            "facet_transitive": is_facet_transitive(K, action),
            "asserted": asserted,
        }
        structural = entry["vertex_transitive"] and entry["facet_transitive"]
        entry["pass"] = structural and (entry["homology_matches"] or not asserted)
        if not asserted:
            entry["note"] = K_FAMILY_TORSION_NOTE
        overall &= entry["pass"]
        instances.append(entry)

    return {
        "report": "reproduce-examples",
        "instances": instances,
        "pass": overall,
        "wall_time_s": round(time.perf_counter() - t0, 3),
    }
