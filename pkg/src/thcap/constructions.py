"""Constructions of transitive complexes and graphs.

Two gluing schemes produce a big object out of copies of a small one:
the cyclic extension places a copy of a complex K at every translate of a
Golomb ruler inside Z/n, and the group extension places a copy of a graph H
at every left translate of a distinguished set inside a finite group.  Both
return their canonical parts so the cluster structure can be verified
downstream.  The module also builds clique and neighbourhood complexes and
the two torsion example families.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence

from .complexes import (
    Face,
    Graph,
    Label,
    SimplicialComplex,
    connected_components,
    face_key,
    from_facets,
    is_connected,
    simplex,
)
from .groups import GroupPair, generated_subgroup, is_progression_free


@dataclass(frozen=True)
class GolombRuler:
    """Strictly increasing non-negative marks with pairwise distinct
    differences."""

    marks: tuple[int, ...]

    def __post_init__(self):
        violation = golomb_violation(self.marks)
        if violation is not None:
            raise ValueError(f"not a Golomb ruler: {violation}")

    @property
    def d(self) -> int:
        return len(self.marks)

    @property
    def length(self) -> int:
        return self.marks[-1] - self.marks[0]

    def differences(self) -> list[int]:
        return sorted(b - a for a, b in combinations(self.marks, 2))


def golomb_violation(marks: Sequence[int]) -> tuple | None:
    """None if all pairwise differences are distinct, else a violating
    quadruple ((a_i, a_j), (a_k, a_l)) with equal differences."""
    marks = list(marks)
    if any(b <= a for a, b in zip(marks, marks[1:])) or (marks and marks[0] < 0):
        raise ValueError(f"marks must be strictly increasing and non-negative: {marks}")
    seen: dict[int, tuple[int, int]] = {}
    for i, a in enumerate(marks):
        for b in marks[i + 1:]:
            d = b - a
            if d in seen:
                return (seen[d], (a, b))
            seen[d] = (a, b)
    return None


def is_golomb(marks: Sequence[int]) -> bool:
    return golomb_violation(marks) is None


def greedy_golomb(d: int) -> GolombRuler:
    """Mian-Chowla style greedy ruler: start at 0, repeatedly append the
    least integer that keeps all differences distinct."""
    if d < 1:
        raise ValueError("need d >= 1 marks")
    marks = [0]
    diffs: set[int] = set()
    while len(marks) < d:
        c = marks[-1] + 1
        while True:
            new = {c - a for a in marks}
            if len(new) == len(marks) and not (new & diffs):
                break
            c += 1
        diffs |= new
        marks.append(c)
    return GolombRuler(tuple(marks))


def choose_modulus(ruler: GolombRuler) -> int:
    """Least n > 2*a_d coprime to every difference of the ruler."""
    diffs = ruler.differences()
    n = 2 * ruler.marks[-1] + 1
    while not all(gcd(n, d) == 1 for d in diffs):
        n += 1
    return n


@dataclass(frozen=True)
class CyclicExtension:
    """A cyclic extension together with its canonical parts V~_x."""

    complex: SimplicialComplex
    parts: tuple[tuple[int, ...], ...]
    ruler: GolombRuler
    modulus: int
    vertex_order: tuple  # vertices of the base complex, v_i -> marks[i]


def cyclic_extension(K: SimplicialComplex, ruler: GolombRuler, n: int) -> CyclicExtension:
    """Complex on Z/n whose faces are all translates x + marks[face] of the
    faces of K; the part V~_x = {x + a_i} carries the copy at x."""
    if len(ruler.marks) != len(K.vertices):
        raise ValueError(
            f"ruler has {len(ruler.marks)} marks but complex has {len(K.vertices)} vertices")
    if n <= 2 * ruler.marks[-1]:
        raise ValueError(f"modulus {n} must exceed 2*a_d = {2 * ruler.marks[-1]}")
    bad = [d for d in ruler.differences() if gcd(n, d) != 1]
    if bad:
        raise ValueError(f"modulus {n} shares a factor with differences {bad}")
    if not is_connected(K):
        raise ValueError("base complex must be connected")
    mark_of = dict(zip(K.vertices, ruler.marks))
    facets = []
    for x in range(n):
        for F in K.facets:
            facets.append(simplex((x + mark_of[v]) % n for v in F))
    parts = tuple(
        tuple(sorted((x + a) % n for a in ruler.marks)) for x in range(n)
    )
    return CyclicExtension(
        complex=from_facets(facets),
        parts=parts,
        ruler=ruler,
        modulus=n,
        vertex_order=K.vertices,
    )


@dataclass(frozen=True)
class GroupExtension:
    """The graph H~ over a pair (Gamma, D), with its canonical parts."""

    graph: Graph
    parts: tuple[tuple, ...]          # sorted label tuples, one per gamma
    part_reps: tuple                  # the translating element for each part
    pair: GroupPair
    connection_set: tuple             # {gamma_i^-1 gamma_j : v_i v_j in E(H)}
    vertex_order: tuple               # vertices of H, v_i -> D[i]


def group_extension_graph(H: Graph, pair: GroupPair) -> GroupExtension:
    """Graph on Gamma with edges {g*g_i, g*g_j} for every g and every edge
    v_i v_j of H."""
    if len(pair.distinguished) != len(H.vertices):
        raise ValueError(
            f"pair has {len(pair.distinguished)} distinguished elements "
            f"but H has {len(H.vertices)} vertices")
    if not is_connected(H):
        raise ValueError("H must be connected")
    G = pair.group
    gamma_of = dict(zip(H.vertices, pair.distinguished))
    elements = G.elements()
    labels = {x: G.canonical_label(x) for x in elements}
    edges = []
    h_edges = H.edges()
    for g in elements:
        for (u, w) in h_edges:
            edges.append((labels[G.multiply(g, gamma_of[u])],
                          labels[G.multiply(g, gamma_of[w])]))
    graph = Graph(labels.values(), edges)
    parts = []
    reps = []
    for g in elements:
        parts.append(tuple(sorted(labels[G.multiply(g, gamma_of[v])] for v in H.vertices)))
        reps.append(g)
    conn = set()
    for (u, w) in h_edges:
        s = G.multiply(G.inverse(gamma_of[u]), gamma_of[w])
        conn.add(s)
        conn.add(G.inverse(s))
    return GroupExtension(
        graph=graph,
        parts=tuple(parts),
        part_reps=tuple(reps),
        pair=pair,
        connection_set=tuple(sorted(conn, key=lambda s: str(G.canonical_label(s)))),
        vertex_order=H.vertices,
    )


def induced_subgraph(G: Graph, S: Sequence[Label]) -> Graph:
    S = set(S)
    unknown = S - set(G.vertices)
    if unknown:
        raise ValueError(f"vertices not in graph: {sorted(map(str, unknown))}")
    edges = [(u, w) for u, w in (tuple(e) for e in G.edges()) if u in S and w in S]
    return Graph(S, edges)


def identity_component(ext: GroupExtension):
    """The component of the identity in H~, as (subgroup, induced graph,
    parts contained in it).

    The component is the Cayley graph of the subgroup generated by the
    connection set; this is cross-checked against plain BFS connectivity.
    """
    G = ext.pair.group
    sub = generated_subgroup(G, ext.connection_set)
    sub_labels = {G.canonical_label(x) for x in sub.elements()}
    comps = connected_components(ext.graph)
    id_label = G.canonical_label(G.identity())
    comp = next(c for c in comps if id_label in c)
    if set(comp) != sub_labels:
        raise AssertionError(
            "identity component does not match the subgroup generated by "
            "the connection set")
    graph = induced_subgraph(ext.graph, comp)
    parts = tuple(p for p in ext.parts if set(p) <= sub_labels)
    return sub, graph, parts


def clique_complex(G: Graph) -> SimplicialComplex:
    """Flag complex: facets are the maximal cliques of G (Bron-Kerbosch
    with pivoting, deterministic vertex order)."""
    adj = {v: set(G.adjacency[v]) for v in G.vertices}
    cliques: list[Face] = []

    def expand(R: set, P: set, X: set):
        if not P and not X:
            cliques.append(simplex(R))
            return
        pivot = max(P | X, key=lambda u: (len(P & adj[u]), face_key([u])))
        for v in sorted(P - adj[pivot], key=lambda u: face_key([u])):
            expand(R | {v}, P & adj[v], X & adj[v])
            P.remove(v)
            X.add(v)

    expand(set(), set(G.vertices), set())
    return from_facets(cliques)


def open_neighbourhood_complex(G: Graph) -> SimplicialComplex:
    """Faces are the subsets of open neighbourhoods N(v); facets the
    maximal ones.  Defined for connected graphs."""
    if not is_connected(G):
        raise ValueError("neighbourhood complexes are defined for connected graphs; "
                         "run per component")
    return from_facets([simplex(G.adjacency[v]) for v in G.vertices if G.adjacency[v]])


def closed_neighbourhood_complex(G: Graph) -> SimplicialComplex:
    """Faces are the subsets of closed neighbourhoods N[v]."""
    if not is_connected(G):
        raise ValueError("neighbourhood complexes are defined for connected graphs; "
                         "run per component")
    return from_facets([G.closed_neighborhood(v) for v in G.vertices])


def power_cycle(n: int, r: int) -> Graph:
    """r-th power of the n-cycle: vertices Z/n, edges between vertices at
    circular distance <= r."""
    if r < 1 or n < 2 * r + 1:
        raise ValueError(f"need n >= 2r+1, got n={n}, r={r}")
    edges = [(x, (x + k) % n) for x in range(n) for k in range(1, r + 1)]
    return Graph(range(n), edges)


def k_family_complex(k: int) -> SimplicialComplex:
    """Complex on Z/(4k+2) with the translates of {0,1,2,4,2k+4} as
    candidate facets.

    The torsion profile (Z, Z+Z/2, 0, ...) holds exactly for k >= 4; below
    that the fifth offset collides with the {0,1,2,4} core modulo 4k+2 and
    the homology is entirely different (for k = 1 the offsets even
    coincide, leaving 4-element facets).
    """
    if k < 1:
        raise ValueError("need k >= 1")
    n = 4 * k + 2
    base = (0, 1, 2, 4, 2 * k + 4)
    return from_facets([simplex({(x + b) % n for b in base}) for x in range(n)])


def gamma_d_pair_defaults(d: int) -> tuple[tuple[int, ...], int]:
    """Default (a, m) for the explicit pair: the canonical progression-free
    sequence and the least valid modulus 4*a_d + 1."""
    a = progression_free(d)
    return a, 4 * a[-1] + 1


def progression_free(d: int) -> tuple[int, ...]:
    """First d positive integers of the form n+1 where n is written with
    only digits 0 and 1 in base 3; such sequences contain no 3-term
    arithmetic progression."""
    if d < 1:
        raise ValueError("need d >= 1")
    terms = []
    n = 0
    while len(terms) < d:
        t = n
        ok = True
        while t:
            if t % 3 == 2:
                ok = False
                break
            t //= 3
        if ok:
            terms.append(n + 1)
        n += 1
    out = tuple(terms)
    assert is_progression_free(out)
    return out
