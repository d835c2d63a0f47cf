"""Verification of vertex- and facet-transitivity under a supplied group
action, and the Lefschetz obstruction on homology profiles.

Automorphism groups are never computed; each construction comes with its
own action (rotation, left multiplication) and we certify transitivity
against that action only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .complexes import SimplicialComplex, simplex
from .groups import FiniteGroup
from .homology import HomologyProfile


@dataclass(frozen=True)
class GroupAction:
    group: FiniteGroup
    act: Callable  # (element, vertex label) -> vertex label


def rotation_action(n: int) -> GroupAction:
    """Z/n acting on vertex labels 0..n-1 by translation."""
    from .groups import Cyclic

    return GroupAction(Cyclic(n), lambda g, v: (v + g) % n)


def left_multiplication_action(group: FiniteGroup, acting: FiniteGroup | None = None) -> GroupAction:
    """A group acting on canonical element labels by left multiplication.

    `group` supplies the vertex labels (all its elements); `acting`
    defaults to the same group but may be a subgroup acting on itself.
    """
    acting = acting if acting is not None else group
    by_label = {group.canonical_label(x): x for x in group.elements()}

    def act(g, v):
        return group.canonical_label(group.multiply(g, by_label[v]))

    return GroupAction(acting, act)


def verify_simplicial_action(K: SimplicialComplex, action: GroupAction) -> bool:
    """True iff every group element maps every facet of K to a face of K
    (hence facets to facets, by counting)."""
    vset = set(K.vertices)
    faces = set(K.faces())
    for g in action.group.elements():
        for F in K.facets:
            image = [action.act(g, v) for v in F]
            if any(w not in vset for w in image):
                raise ValueError(f"action leaves the vertex set at {F} under {g!r}")
            try:
                if simplex(image) not in faces:
                    return False
            except ValueError:
                return False  # vertices collide: not injective on this facet
    return True


def is_vertex_transitive(K: SimplicialComplex, action: GroupAction) -> bool:
    """Orbit of one vertex covers all vertices."""
    if not K.vertices:
        return True
    v0 = K.vertices[0]
    orbit = {action.act(g, v0) for g in action.group.elements()}
    return orbit == set(K.vertices)


def is_facet_transitive(K: SimplicialComplex, action: GroupAction) -> bool:
    """Orbit of one facet covers all facets."""
    if not K.facets:
        return True
    F0 = K.facets[0]
    facets = set(K.facets)
    orbit = {simplex(action.act(g, v) for v in F0) for g in action.group.elements()}
    return orbit == facets


OBSTRUCTED = "obstructed"
NOT_APPLICABLE = "not_applicable"


def lefschetz_obstruction(profile: HomologyProfile) -> str:
    """Fixed-point obstruction for cyclic vertex-transitive actions.

    `obstructed` iff every rational Betti number is at most 1 and the Euler
    characteristic is odd; such a homotopy type admits no Z/n-vertex-
    transitive model.  Torsion is never consulted.  The contractible
    profile is reported not_applicable (the hypothesis excludes it).
    """
    if profile.is_point():
        return NOT_APPLICABLE
    bettis = [b for b, _ in profile.groups]
    if any(b > 1 for b in bettis):
        return NOT_APPLICABLE
    chi = sum((-1) ** i * b for i, b in enumerate(bettis))
    if chi % 2 == 0:
        return NOT_APPLICABLE
    return OBSTRUCTED
