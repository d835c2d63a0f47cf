"""Cluster decompositions, shape hypergraphs, cluster-girth, and the
wedge-circle count.

A cluster is a union of induced subobjects (the parts) any two of which
share at most one vertex.  A connected cluster of connected parts is
homotopy equivalent to the one-point union of its parts with l extra
circles, where l depends only on the shape (the hypergraph of part vertex
sets).  We compute l as the first Betti number E - V + C of the reduced
incidence graph on parts and shared vertices; every pipeline validates this
number against the exact homology of the host, and any discrepancy is
surfaced as a verification failure, never reconciled silently.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .complexes import (
    SimplicialComplex,
    connected_components,
    induced_subcomplex,
    is_connected,
    label_key,
)


class ClusterError(ValueError):
    """Invalid cluster decomposition; `violations` lists the reasons."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class ShapeSummary:
    """What the wedge-circle count depends on: the incidence pattern of
    parts and shared vertices."""

    k: int
    shared_multiplicities: tuple[int, ...]   # sorted m(x) for vertices with m(x) >= 2
    incidence_edge_count: int
    component_count: int


@dataclass(frozen=True)
class ClusterDecomposition:
    host: object                      # SimplicialComplex | Graph
    parts: tuple[tuple, ...]          # sorted vertex tuples

    @property
    def k(self) -> int:
        return len(self.parts)

    def multiplicity(self) -> dict:
        m: dict = {}
        for part in self.parts:
            for v in part:
                m[v] = m.get(v, 0) + 1
        return m


def verify_cluster(host, parts: Sequence[Sequence]) -> ClusterDecomposition:
    """Check that `parts` are vertex sets decomposing `host` as a cluster.

    Coverage means every facet (for a complex) or edge (for a graph) lies
    inside some part, and every vertex lies in some part; any two parts may
    share at most one vertex.
    """
    part_tuples = tuple(tuple(sorted(p, key=label_key)) for p in parts)
    part_sets = [set(p) for p in part_tuples]
    host_vertices = set(host.vertices)
    violations: list[str] = []

    for p in part_sets:
        if not p <= host_vertices:
            violations.append(f"part {sorted(p, key=label_key)} uses vertices outside the host")

    covered = set().union(*part_sets) if part_sets else set()
    missing = host_vertices - covered
    if missing:
        violations.append(f"vertices not covered by any part: {sorted(missing, key=label_key)[:5]}")

    if isinstance(host, SimplicialComplex):
        units = host.facets
        kind = "facet"
    else:
        units = [tuple(e) for e in host.edges()]
        kind = "edge"
    for u in units:
        s = set(u)
        if not any(s <= p for p in part_sets):
            violations.append(f"{kind} {u} not contained in any part")
            break

    for i in range(len(part_sets)):
        for j in range(i + 1, len(part_sets)):
            inter = part_sets[i] & part_sets[j]
            if len(inter) > 1:
                violations.append(
                    f"parts {i} and {j} share {sorted(inter, key=label_key)}")
                break
        else:
            continue
        break

    if violations:
        raise ClusterError(violations)
    return ClusterDecomposition(host=host, parts=part_tuples)


def _incidence_adjacency(decomp: ClusterDecomposition):
    """Bipartite incidence graph: vertex nodes ('v', label), part nodes
    ('p', index)."""
    adj: dict[tuple, list] = {}
    for idx, part in enumerate(decomp.parts):
        pnode = ("p", idx)
        adj[pnode] = []
        for v in part:
            vnode = ("v", v)
            adj.setdefault(vnode, []).append(pnode)
            adj[pnode].append(vnode)
    return adj


def cluster_girth(decomp: ClusterDecomposition) -> int | float:
    """Length of the shortest alternating vertex/part cycle with all
    vertices and all parts distinct; math.inf when there is none.

    Equals half the girth of the bipartite incidence graph (whose cycles
    have length >= 6 for a valid decomposition).
    """
    adj = _incidence_adjacency(decomp)
    best = math.inf
    # shortest cycle through each incidence edge (u, w): remove it, BFS
    for u in adj:
        if u[0] != "p":
            continue
        for w in adj[u]:
            dist = {u: 0}
            queue = deque([u])
            found = None
            while queue:
                x = queue.popleft()
                if dist[x] + 1 >= best:
                    continue
                for y in adj[x]:
                    if x == u and y == w:
                        continue  # the removed edge
                    if y == w and x != u:
                        found = dist[x] + 1
                        queue.clear()
                        break
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            if found is not None:
                best = min(best, found + 1)
    if best is math.inf:
        return math.inf
    if best < 6 or best % 2 != 0:
        raise AssertionError(f"incidence graph has a cycle of length {best}; "
                             "decomposition is not a valid cluster")
    return best // 2


def induced_part(decomp: ClusterDecomposition, index: int):
    """The induced subobject carried by one part."""
    part = decomp.parts[index]
    if isinstance(decomp.host, SimplicialComplex):
        return induced_subcomplex(decomp.host, part)
    from .constructions import induced_subgraph

    return induced_subgraph(decomp.host, part)


def shape_summary(decomp: ClusterDecomposition) -> ShapeSummary:
    mult = decomp.multiplicity()
    shared = {v: m for v, m in mult.items() if m >= 2}
    adj, _, _ = _reduced_incidence(decomp, shared)
    return ShapeSummary(
        k=decomp.k,
        shared_multiplicities=tuple(sorted(shared.values())),
        incidence_edge_count=sum(shared.values()),
        component_count=_component_count(adj),
    )


def _reduced_incidence(decomp: ClusterDecomposition, shared: dict):
    """Graph on part nodes and shared-vertex nodes with one edge per
    containment; returns (adjacency, E, V)."""
    adj: dict[tuple, list] = {("p", i): [] for i in range(decomp.k)}
    E = 0
    for idx, part in enumerate(decomp.parts):
        for v in part:
            if v in shared:
                vnode = ("v", v)
                adj.setdefault(vnode, []).append(("p", idx))
                adj[("p", idx)].append(vnode)
                E += 1
    return adj, E, len(adj)


def _component_count(adj: dict) -> int:
    seen: set = set()
    count = 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return count


def wedge_circle_count(decomp: ClusterDecomposition) -> int:
    """Number of extra circle summands contributed by the shape: the first
    Betti number E - V + C of the reduced incidence graph on parts and
    shared vertices.

    Requires a connected host and connected parts (the situation in which
    the wedge decomposition holds).
    """
    if not is_connected(decomp.host):
        raise ValueError("host is not connected")
    for i in range(decomp.k):
        if len(connected_components(induced_part(decomp, i))) != 1:
            raise ValueError(f"part {i} ({decomp.parts[i]}) is not connected")
    mult = decomp.multiplicity()
    shared = {v: m for v, m in mult.items() if m >= 2}
    adj, E, V = _reduced_incidence(decomp, shared)
    C = _component_count(adj)
    l = E - V + C
    assert l >= 0
    return l


def cluster_report(decomp_or_error, l: int | None = None) -> dict:
    """Report JSON for the CLI: validity, part count, girth, l."""
    if isinstance(decomp_or_error, ClusterError):
        return {"valid": False, "violations": decomp_or_error.violations}
    decomp = decomp_or_error
    girth = cluster_girth(decomp)
    out = {
        "valid": True,
        "k": decomp.k,
        "cluster_girth": "inf" if girth is math.inf else girth,
        "violations": [],
    }
    if l is not None:
        out["l"] = l
    else:
        try:
            out["l"] = wedge_circle_count(decomp)
        except ValueError as exc:
            out["l"] = None
            out["l_unavailable"] = str(exc)
    return out
