"""Finite abstract simplicial complexes and simple graphs.

Both structures are stored by their maximal data only: a complex keeps its
facets (inclusion-maximal faces) and a graph keeps a symmetric adjacency map.
Full face lists are enumerated on demand and cached, since the complexes
produced by the extension constructions have many vertices but low dimension.

Vertex labels are integers or strings.  All enumerations run in a fixed
total order on labels so that repeated runs produce identical objects.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product
from typing import Iterable, Sequence


Label = int | str
Face = tuple  # sorted tuple of labels


def label_key(v: Label):
    """Total, deterministic sort key over mixed int/str labels."""
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise TypeError(f"vertex label must be int or str, got {v!r}")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, v)


def simplex(vertices: Iterable[Label]) -> Face:
    """Canonical face: sorted tuple of distinct labels."""
    vs = sorted(vertices, key=label_key)
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise ValueError(f"repeated vertex {a!r} in simplex")
    return tuple(vs)


def face_key(f: Sequence[Label]):
    return tuple(label_key(v) for v in f)


class SimplicialComplex:
    """Finite abstract simplicial complex, stored by its facets.

    Invariants: facets form an antichain under inclusion, every vertex lies
    in some facet, and all faces are canonically sorted tuples.  Use
    :func:`from_facets` to build one from arbitrary candidate faces.
    """

    def __init__(self, facets: Sequence[Face]):
        self.facets = tuple(facets)
        self.vertices = tuple(sorted({v for f in facets for v in f}, key=label_key))
        self._faces_by_dim: dict[int, list[Face]] | None = None

    @property
    def dim(self) -> int:
        """Dimension; -1 for the empty complex."""
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets, dim {self.dim})"

    def has_face(self, face: Iterable[Label]) -> bool:
        s = set(face)
        return any(s.issubset(f) for f in self.facets)

    def faces_by_dim(self) -> dict[int, list[Face]]:
        """All nonempty faces, grouped by dimension, each list sorted."""
        if self._faces_by_dim is None:
            seen: set[Face] = set()
            for F in self.facets:
                for k in range(1, len(F) + 1):
                    seen.update(combinations(F, k))
            by_dim: dict[int, list[Face]] = {}
            for f in seen:
                by_dim.setdefault(len(f) - 1, []).append(f)
            for d in by_dim:
                by_dim[d].sort(key=face_key)
            self._faces_by_dim = by_dim
        return self._faces_by_dim

    def faces(self, dim: int | None = None) -> list[Face]:
        by_dim = self.faces_by_dim()
        if dim is not None:
            return list(by_dim.get(dim, []))
        out: list[Face] = []
        for d in sorted(by_dim):
            out.extend(by_dim[d])
        return out

    def face_count(self) -> int:
        return sum(len(fs) for fs in self.faces_by_dim().values())

    def f_vector(self) -> list[int]:
        by_dim = self.faces_by_dim()
        return [len(by_dim.get(d, [])) for d in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def relabel(self, mapping: dict) -> "SimplicialComplex":
        """Apply an injective vertex relabeling."""
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("relabeling is not injective")
        return from_facets([simplex(mapping[v] for v in f) for f in self.facets])

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "facets": [list(f) for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        if not isinstance(data, dict) or "facets" not in data:
            raise ValueError("complex JSON must be an object with a 'facets' key")
        for v in data.get("vertices", []):
            label_key(v)
        K = from_facets([simplex(f) for f in data["facets"]])
        extra = set(data.get("vertices", [])) - set(K.vertices)
        if extra:
            # isolated vertices are dimension-0 facets
            K = from_facets(list(K.facets) + [simplex([v]) for v in extra])
        return K


class Graph:
    """Finite simple undirected graph: symmetric, loopless adjacency."""

    def __init__(self, vertices: Iterable[Label], edges: Iterable[Sequence[Label]]):
        self.vertices = tuple(sorted(set(vertices), key=label_key))
        vset = set(self.vertices)
        adj: dict[Label, set] = {v: set() for v in self.vertices}
        for e in edges:
            u, w = e
            if u == w:
                raise ValueError(f"loop at vertex {u!r}")
            if u not in vset or w not in vset:
                raise ValueError(f"edge {e!r} uses unknown vertex")
            adj[u].add(w)
            adj[w].add(u)
        self.adjacency = {v: tuple(sorted(adj[v], key=label_key)) for v in self.vertices}

    def neighbors(self, v: Label) -> tuple:
        return self.adjacency[v]

    def closed_neighborhood(self, v: Label) -> Face:
        return simplex(set(self.adjacency[v]) | {v})

    def degree(self, v: Label) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[Face]:
        out = [simplex((u, w)) for u in self.vertices for w in self.adjacency[u] if label_key(u) < label_key(w)]
        out.sort(key=face_key)
        return out

    def has_edge(self, u: Label, w: Label) -> bool:
        return w in self.adjacency.get(u, ())

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.adjacency.items(), key=lambda kv: label_key(kv[0]))))

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges())} edges)"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise ValueError("graph JSON must be an object with 'vertices' and 'edges' keys")
        for v in data["vertices"]:
            label_key(v)
        return cls(data["vertices"], data["edges"])


def from_facets(candidate_faces: Iterable[Sequence[Label]]) -> SimplicialComplex:
    """Complex whose facets are the inclusion-maximal candidate faces."""
    sets = {frozenset(f) for f in candidate_faces if len(f) > 0}
    for f in candidate_faces:
        simplex(f)  # validate labels and distinctness
    maximal = []
    for s in sorted(sets, key=len, reverse=True):
        if not any(s < m for m in maximal):
            maximal.append(s)
    facets = sorted((simplex(m) for m in maximal), key=face_key)
    return SimplicialComplex(facets)


def induced_subcomplex(K: SimplicialComplex, S: Iterable[Label]) -> SimplicialComplex:
    """Subcomplex of all faces of K contained in the vertex set S."""
    S = set(S)
    unknown = S - set(K.vertices)
    if unknown:
        raise ValueError(f"vertices not in complex: {sorted(unknown, key=label_key)}")
    return from_facets([simplex(set(F) & S) for F in K.facets if set(F) & S])


def one_skeleton(K: SimplicialComplex) -> Graph:
    """Graph of the 0- and 1-faces of K."""
    edges = set()
    for F in K.facets:
        edges.update(combinations(F, 2))
    return Graph(K.vertices, edges)


BARY_SEP = "|"


def face_label(face: Sequence[Label]) -> str:
    parts = [str(v) for v in face]
    for p in parts:
        if BARY_SEP in p:
            raise ValueError(f"vertex label {p!r} contains the reserved separator {BARY_SEP!r}")
    return BARY_SEP.join(parts)


def barycentric_1skeleton(K: SimplicialComplex) -> Graph:
    """1-skeleton of the barycentric subdivision.

    Vertices are the nonempty faces of K (labeled by joining their vertex
    labels with '|'); two faces are adjacent iff one strictly contains the
    other.
    """
    if not K.facets:
        raise ValueError("barycentric subdivision of the empty complex")
    all_faces = K.faces()
    labels = {f: face_label(f) for f in all_faces}
    edges = []
    for sigma, tau in combinations(all_faces, 2):
        s, t = set(sigma), set(tau)
        if s < t or t < s:
            edges.append((labels[sigma], labels[tau]))
    return Graph(labels.values(), edges)


def _tagged(K: SimplicialComplex, tag: str) -> SimplicialComplex:
    return K.relabel({v: f"{tag}:{v}" for v in K.vertices})


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join: facets are unions of a facet of K1 and a facet of K2.

    Vertex sets are disjoined by tagging with '1:'/'2:' prefixes, except when
    they are already disjoint (so that K * (empty) == K exactly).
    """
    if not K2.facets:
        return K1
    if not K1.facets:
        return K2
    if set(K1.vertices) & set(K2.vertices):
        K1, K2 = _tagged(K1, "1"), _tagged(K2, "2")
    return from_facets([simplex(F1 + F2) for F1 in K1.facets for F2 in K2.facets])


def t_fold_join(K: SimplicialComplex, t: int) -> SimplicialComplex:
    """t-fold join K * K * ... * K with copies tagged '1:' ... 't:'."""
    if t < 1:
        raise ValueError("t must be >= 1")
    copies = [_tagged(K, str(i + 1)) for i in range(t)]
    facets = [simplex(sum(fs, ())) for fs in product(*(c.facets for c in copies))]
    return from_facets(facets)


def connected_components(X: "Graph | SimplicialComplex") -> list[list[Label]]:
    """Partition of the vertex set into connected pieces.

    For a complex, connectivity is that of its 1-skeleton (faces of any
    dimension connect their vertices).
    """
    if isinstance(X, SimplicialComplex):
        adj: dict[Label, set] = {v: set() for v in X.vertices}
        for F in X.facets:
            for u, w in combinations(F, 2):
                adj[u].add(w)
                adj[w].add(u)
        vertices = X.vertices
    else:
        adj = {v: set(X.adjacency[v]) for v in X.vertices}
        vertices = X.vertices

    seen: set = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(sorted(comp, key=label_key))
    return comps


def is_connected(X: "Graph | SimplicialComplex") -> bool:
    return len(connected_components(X)) == 1
