"""Discrete Morse matching on closed neighbourhood complexes of clustered
graphs, and the collapse onto the critical subcomplex.

For a graph that is a cluster of parts with cluster-girth at least 5, every
face of N[G] spanning more than one part has a unique dominating vertex v
(a vertex with the face inside N[v]).  Pairing sigma with sigma + {v} over
all such faces is an acyclic matching whose critical faces are exactly the
faces lying inside single parts, so N[G] collapses onto the cluster of the
parts' closed neighbourhood complexes.  Acyclicity is re-checked here by
explicit cycle detection rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Face, Graph, SimplicialComplex, from_facets, simplex
from .clusters import ClusterDecomposition
from .constructions import closed_neighbourhood_complex


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class AcyclicMatching:
    """Pairs (sigma, tau) with tau = sigma + one vertex; unmatched faces are
    critical."""

    pairs: tuple[tuple[Face, Face], ...]
    critical: tuple[Face, ...]

    def face_count(self) -> int:
        return 2 * len(self.pairs) + len(self.critical)


def _check_acyclic(pairs: list[tuple[Face, Face]]) -> None:
    """Cycle detection on the modified Hasse diagram, pair to pair:
    (sigma, tau) -> (sigma', tau') when sigma' is a facet of tau other than
    sigma."""
    by_lower: dict[Face, int] = {sigma: i for i, (sigma, _) in enumerate(pairs)}
    succs: list[list[int]] = []
    for sigma, tau in pairs:
        out = []
        for j in range(len(tau)):
            rho = tau[:j] + tau[j + 1:]
            if rho == sigma:
                continue
            k = by_lower.get(rho)
            if k is not None:
                out.append(k)
        succs.append(out)

    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * len(pairs)
    for start in range(len(pairs)):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(succs[start]))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    sigma, tau = pairs[node]
                    raise MatchingError(
                        f"matching is not acyclic: gradient cycle through ({sigma}, {tau})")
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(succs[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()


def validate_matching(K: SimplicialComplex, matching: AcyclicMatching) -> None:
    """Check the matching is a partial pairing of the faces of K across
    adjacent dimensions, that no face repeats, that pairs plus critical
    faces exhaust K, and that the matching is acyclic."""
    faces = set(K.faces())
    seen: set[Face] = set()
    for sigma, tau in matching.pairs:
        if sigma not in faces or tau not in faces:
            raise MatchingError(f"pair ({sigma}, {tau}) uses non-faces")
        if len(tau) != len(sigma) + 1 or not set(sigma) < set(tau):
            raise MatchingError(f"pair ({sigma}, {tau}) is not a codimension-1 inclusion")
        for f in (sigma, tau):
            if f in seen:
                raise MatchingError(f"face {f} appears in two pairs")
            seen.add(f)
    for f in matching.critical:
        if f in seen:
            raise MatchingError(f"critical face {f} is also matched")
        seen.add(f)
    if seen != faces:
        raise MatchingError("pairs and critical faces do not exhaust the complex")
    _check_acyclic(list(matching.pairs))


def neighbourhood_matching(G: Graph, decomp: ClusterDecomposition) -> AcyclicMatching:
    """The dominating-vertex matching on N[G] for a cluster of cluster-girth
    at least 5.

    Faces inside a single part are critical.  A face spanning parts must
    have a unique dominating vertex (otherwise the girth hypothesis fails,
    and we raise); it is paired with that vertex added or removed.
    """
    if not isinstance(decomp.host, Graph) or decomp.host != G:
        raise ValueError("decomposition does not describe this graph")
    N = closed_neighbourhood_complex(G)
    part_sets = [set(p) for p in decomp.parts]
    closed = {v: set(G.closed_neighborhood(v)) for v in G.vertices}

    pairs: list[tuple[Face, Face]] = []
    critical: list[Face] = []
    for f in N.faces():
        fs = set(f)
        if any(fs <= p for p in part_sets):
            critical.append(f)
            continue
        dominators = set.intersection(*(closed[u] for u in f))
        if len(dominators) != 1:
            raise MatchingError(
                f"face {f} spanning parts has {len(dominators)} dominating vertices; "
                "cluster-girth at least 5 is violated")
        (v,) = dominators
        if v in fs:
            partner = simplex(fs - {v})
            if any(set(partner) <= p for p in part_sets):
                raise MatchingError(
                    f"face {partner} inside a part is dominated from outside; "
                    "cluster coverage is violated")
            continue  # recorded when the lower face is visited
        pairs.append((f, simplex(fs | {v})))

    matching = AcyclicMatching(pairs=tuple(pairs), critical=tuple(critical))
    validate_matching(N, matching)
    return matching


def collapse_critical(K: SimplicialComplex, matching: AcyclicMatching) -> SimplicialComplex:
    """The subcomplex of critical faces; valid only when they are downward
    closed (which the dominating-vertex matching guarantees)."""
    critical = set(matching.critical)
    for f in critical:
        for k in range(1, len(f)):
            for sub in combinations(f, k):
                if sub not in critical:
                    raise MatchingError(
                        f"critical faces are not a subcomplex: {sub} missing under {f}")
    return from_facets(list(critical))
