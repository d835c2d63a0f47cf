"""Finite groups, distinguished-element pairs, and the alternating-product
conditions used to glue copies of a graph into a group-transitive one.

The condition R(p) asks that an alternating length-2p product
g_{i0} * g_{i1}^-1 * ... * g_{i(2p-2)} * g_{i(2p-1)}^-1 of distinguished
elements can equal the identity only when two cyclically adjacent indices
coincide; G(p) is the conjunction of R(1)..R(p).  Checking is exhaustive
over index sequences, with pruning by reachable prefix products.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from .complexes import Graph, Label


class FiniteGroup:
    """Abstract finite group interface.

    Elements are hashable immutable values.  `elements()` must enumerate
    deterministically and `canonical_label` must be injective and
    order-stable so that derived vertex labels are reproducible.
    """

    name = "group"

    def identity(self):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def elements(self) -> list:
        raise NotImplementedError

    def order(self) -> int:
        return len(self.elements())

    def canonical_label(self, a) -> Label:
        raise NotImplementedError

    def contains(self, a) -> bool:
        return a in set(self.elements())

    def is_abelian(self) -> bool:
        els = self.elements()
        return all(self.multiply(a, b) == self.multiply(b, a) for a in els for b in els)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, order {self.order()})"


class Cyclic(FiniteGroup):
    """Z/n under addition; elements are 0..n-1."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("order must be >= 1")
        self.n = n
        self.name = f"cyclic:{n}"

    def identity(self):
        return 0

    def multiply(self, a, b):
        return (a + b) % self.n

    def inverse(self, a):
        return (-a) % self.n

    def elements(self):
        return list(range(self.n))

    def order(self):
        return self.n

    def canonical_label(self, a):
        return a


class Symmetric(FiniteGroup):
    """Permutations of {1..m} in one-line notation (tuple of images).

    multiply(a, b) composes right-to-left: apply b first, then a.
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("degree must be >= 1")
        self.m = m
        self.name = f"sym:{m}"
        self._elements: list[tuple[int, ...]] | None = None

    def identity(self):
        return tuple(range(1, self.m + 1))

    def multiply(self, a, b):
        return tuple(a[b[i] - 1] for i in range(self.m))

    def inverse(self, a):
        inv = [0] * self.m
        for i, v in enumerate(a):
            inv[v - 1] = i + 1
        return tuple(inv)

    def elements(self):
        if self._elements is None:
            self._elements = [tuple(p) for p in permutations(range(1, self.m + 1))]
        return list(self._elements)

    def order(self):
        import math

        return math.factorial(self.m)

    def canonical_label(self, a):
        return ",".join(str(v) for v in a)

    def transposition(self, i: int, j: int) -> tuple[int, ...]:
        if not (1 <= i <= self.m and 1 <= j <= self.m) or i == j:
            raise ValueError(f"invalid transposition ({i} {j}) in sym:{self.m}")
        img = list(range(1, self.m + 1))
        img[i - 1], img[j - 1] = j, i
        return tuple(img)


class DirectProduct(FiniteGroup):
    """Componentwise product of two groups; elements are pairs."""

    def __init__(self, g1: FiniteGroup, g2: FiniteGroup):
        self.g1 = g1
        self.g2 = g2
        self.name = f"prod:{g1.name},{g2.name}"

    def identity(self):
        return (self.g1.identity(), self.g2.identity())

    def multiply(self, a, b):
        return (self.g1.multiply(a[0], b[0]), self.g2.multiply(a[1], b[1]))

    def inverse(self, a):
        return (self.g1.inverse(a[0]), self.g2.inverse(a[1]))

    def elements(self):
        return [(x, y) for x in self.g1.elements() for y in self.g2.elements()]

    def order(self):
        return self.g1.order() * self.g2.order()

    def canonical_label(self, a):
        return f"{self.g1.canonical_label(a[0])}|{self.g2.canonical_label(a[1])}"


class Subgroup(FiniteGroup):
    """A subgroup given by an explicit element list, with ambient operations."""

    def __init__(self, ambient: FiniteGroup, elements: Iterable):
        self.ambient = ambient
        self._elements = sorted(set(elements), key=lambda e: str(ambient.canonical_label(e)))
        self._set = set(self._elements)
        self.name = f"subgroup({ambient.name}, order {len(self._elements)})"

    def identity(self):
        return self.ambient.identity()

    def multiply(self, a, b):
        return self.ambient.multiply(a, b)

    def inverse(self, a):
        return self.ambient.inverse(a)

    def elements(self):
        return list(self._elements)

    def order(self):
        return len(self._elements)

    def canonical_label(self, a):
        return self.ambient.canonical_label(a)

    def contains(self, a):
        return a in self._set


@dataclass(frozen=True)
class GroupPair:
    """A group with an ordered list D of distinct distinguished elements.

    D is not required to generate the group.
    """

    group: FiniteGroup
    distinguished: tuple

    def __post_init__(self):
        if len(set(self.distinguished)) != len(self.distinguished):
            raise ValueError("distinguished elements must be pairwise distinct")

    @property
    def d(self) -> int:
        return len(self.distinguished)


@dataclass(frozen=True)
class RWitness:
    """A violating index sequence for condition R(p), 1-based indices."""

    p: int
    indices: tuple[int, ...]


def alternating_product(pair: GroupPair, indices: Sequence[int]):
    """g_{i0} * g_{i1}^-1 * g_{i2} * ... for 1-based indices of even length."""
    G = pair.group
    acc = G.identity()
    for pos, idx in enumerate(indices):
        g = pair.distinguished[idx - 1]
        acc = G.multiply(acc, g if pos % 2 == 0 else G.inverse(g))
    return acc


def _has_cyclic_adjacent_equal(indices: Sequence[int]) -> bool:
    n = len(indices)
    return any(indices[i] == indices[(i + 1) % n] for i in range(n))


def is_violating(pair: GroupPair, p: int, indices: Sequence[int]) -> bool:
    """True iff the sequence has no cyclically adjacent repeat yet its
    alternating product is the identity."""
    if len(indices) != 2 * p:
        raise ValueError(f"need 2p = {2 * p} indices")
    if _has_cyclic_adjacent_equal(indices):
        return False
    return alternating_product(pair, indices) == pair.group.identity()


def _reachable_suffix_products(pair: GroupPair, length: int) -> list[set]:
    """sets[k] = all values an alternating product of positions k..2p-1 can
    take (ignoring index-adjacency constraints); used for pruning."""
    G = pair.group
    sets: list[set] = [set() for _ in range(length + 1)]
    sets[length] = {G.identity()}
    gens_even = list(pair.distinguished)
    gens_odd = [G.inverse(g) for g in pair.distinguished]
    full = None
    for k in range(length - 1, -1, -1):
        gens = gens_even if k % 2 == 0 else gens_odd
        nxt = sets[k + 1]
        if full is not None and len(nxt) == full:
            sets[k] = nxt
            continue
        acc = set()
        for g in gens:
            for t in nxt:
                acc.add(G.multiply(g, t))
        sets[k] = acc
        if full is None and len(acc) == G.order():
            full = len(acc)
    return sets


def satisfies_R(pair: GroupPair, p: int, prune: bool = True) -> RWitness | None:
    """Exhaustive check of condition R(p).

    Returns None when the condition holds, else the lexicographically least
    violating index sequence as an RWitness.  With prune=True, prefixes
    whose running product cannot be completed to the identity are skipped
    (the result is identical; a full d^(2p) scan is used by tests).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    G = pair.group
    d = pair.d
    n = 2 * p
    e = G.identity()
    suffix = _reachable_suffix_products(pair, n) if prune else None
    inverses = [G.inverse(g) for g in pair.distinguished]

    seq: list[int] = []
    prefix = [e]

    def extend() -> RWitness | None:
        k = len(seq)
        if k == n:
            if prefix[-1] == e:
                return RWitness(p, tuple(seq))
            return None
        for i in range(1, d + 1):
            if seq and i == seq[-1]:
                continue
            if k == n - 1 and i == seq[0]:
                continue
            g = pair.distinguished[i - 1] if k % 2 == 0 else inverses[i - 1]
            h = G.multiply(prefix[-1], g)
            if suffix is not None and G.inverse(h) not in suffix[k + 1]:
                continue
            seq.append(i)
            prefix.append(h)
            found = extend()
            seq.pop()
            prefix.pop()
            if found is not None:
                return found
        return None

    return extend()


def satisfies_G(pair: GroupPair, p: int, prune: bool = True) -> RWitness | None:
    """Conjunction of R(1)..R(p); returns the first witness found, if any.

    R(1) holds for every pair with distinct distinguished elements (which
    GroupPair enforces), so the scan effectively starts at R(2).
    """
    for q in range(1, p + 1):
        w = satisfies_R(pair, q, prune=prune)
        if w is not None:
            return w
    return None


def cayley_graph(G: FiniteGroup, S: Iterable) -> Graph:
    """Cayley graph on all of G: edge x--y iff x^-1 y is in S.

    S must exclude the identity and be closed under inverses.
    """
    S = list(S)
    e = G.identity()
    sset = set(S)
    if e in sset:
        raise ValueError("connection set contains the identity")
    for s in S:
        if G.inverse(s) not in sset:
            raise ValueError(f"connection set not inverse-closed at {s!r}")
    elements = G.elements()
    labels = {x: G.canonical_label(x) for x in elements}
    edges = []
    for x in elements:
        for s in S:
            y = G.multiply(x, s)
            edges.append((labels[x], labels[y]))
    return Graph(labels.values(), edges)


def generated_subgroup(G: FiniteGroup, S: Iterable) -> Subgroup:
    """Closure of S (plus the identity) under multiplication and inverse."""
    gens = set(S)
    gens |= {G.inverse(s) for s in gens}
    closure = {G.identity()}
    frontier = list(closure)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.multiply(x, g)
                if y not in closure:
                    closure.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(G, closure)


def is_progression_free(terms: Sequence[int]) -> bool:
    """No nontrivial 3-term arithmetic progression: a_i + a_j = 2 a_k only
    for i = j = k."""
    vals = list(terms)
    if sorted(set(vals)) != vals or any(v <= 0 for v in vals):
        raise ValueError("terms must be strictly increasing positive integers")
    pos = {v: i for i, v in enumerate(vals)}
    for i, a in enumerate(vals):
        for j, b in enumerate(vals):
            s = a + b
            if s % 2 == 0 and s // 2 in pos:
                k = pos[s // 2]
                if not (i == j == k):
                    return False
    return True


def gamma_d_pair(d: int, a: Sequence[int], m: int) -> GroupPair:
    """The explicit pair in Sym(d+1) x Z/m with g_i = ((1 i+1), a_i).

    Requires a progression-free sequence a and m > 4*a_d; the result
    satisfies G(4), which the Cayley pipeline re-verifies exhaustively.
    """
    if d < 1 or len(a) != d:
        raise ValueError("need d >= 1 marks")
    if not is_progression_free(a):
        raise ValueError(f"sequence {tuple(a)} is not progression-free")
    if m <= 4 * a[-1]:
        raise ValueError(f"modulus {m} must exceed 4*a_d = {4 * a[-1]}")
    sym = Symmetric(d + 1)
    cyc = Cyclic(m)
    G = DirectProduct(sym, cyc)
    gammas = tuple((sym.transposition(1, i + 2), a[i] % m) for i in range(d))
    return GroupPair(G, gammas)


@dataclass(frozen=True)
class IdentityWordReport:
    """Classification of identity-product transposition words."""

    m: int
    word_length: int
    total_words: int
    identity_words: int
    adjacent_equal: int
    pattern_counts: dict
    exceptional: tuple

    @property
    def clean(self) -> bool:
        return not self.exceptional


_PATTERNS_6 = {"ijijij": (0, 1, 0, 1, 0, 1)}
_PATTERNS_8 = {
    "ijikijik": (0, 1, 0, 2, 0, 1, 0, 2),
    "ijikjijk": (0, 1, 0, 2, 1, 0, 1, 2),
}


def _matches_template(word: Sequence[int], template: Sequence[int]) -> bool:
    assign: dict[int, int] = {}
    used: set[int] = set()
    for w, t in zip(word, template):
        if t in assign:
            if assign[t] != w:
                return False
        else:
            if w in used:
                return False
            assign[t] = w
            used.add(w)
    return True


def _matches_any_shift(word: tuple[int, ...], templates: dict) -> str | None:
    n = len(word)
    for name, template in templates.items():
        for shift in range(n):
            rotated = word[shift:] + word[:shift]
            if _matches_template(rotated, template):
                return name
    return None


def verify_transposition_identities(m: int, word_length: int) -> IdentityWordReport:
    """Enumerate words over the star transpositions (1 i), i = 2..m, whose
    product is the identity, and classify each against the known shapes.

    Words with a cyclically adjacent repeated index are expected; beyond
    those, length 6 allows (i,j,i,j,i,j) and length 8 allows
    (i,j,i,k,i,j,i,k) and (i,j,i,k,j,i,j,k) up to cyclic shift.  Anything
    else is reported as exceptional.
    """
    if m < 3:
        raise ValueError("need m >= 3")
    if word_length not in (4, 6, 8):
        raise ValueError("word_length must be 4, 6 or 8")
    sym = Symmetric(m)
    gens = {i: sym.transposition(1, i) for i in range(2, m + 1)}
    identity = sym.identity()

    # BFS distances in the star-transposition Cayley graph, for exact pruning
    dist = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens.values():
                y = sym.multiply(x, g)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt

    identity_words: list[tuple[int, ...]] = []
    word: list[int] = []
    prefix = [identity]

    def extend():
        k = len(word)
        if k == word_length:
            if prefix[-1] == identity:
                identity_words.append(tuple(word))
            return
        remaining = word_length - k
        h = prefix[-1]
        # a star transposition word of length r reaches h iff dist(h) <= r
        # with matching parity (pad with repeated generators)
        if h in dist and (dist[h] > remaining or (dist[h] - remaining) % 2 != 0):
            return
        for i in range(2, m + 1):
            word.append(i)
            prefix.append(sym.multiply(h, gens[i]))
            extend()
            word.pop()
            prefix.pop()

    extend()

    templates = _PATTERNS_6 if word_length == 6 else _PATTERNS_8 if word_length == 8 else {}
    pattern_counts = {name: 0 for name in templates}
    adjacent = 0
    exceptional = []
    for w in identity_words:
        if _has_cyclic_adjacent_equal(w):
            adjacent += 1
            continue
        name = _matches_any_shift(w, templates)
        if name is not None:
            pattern_counts[name] += 1
        else:
            exceptional.append(w)

    return IdentityWordReport(
        m=m,
        word_length=word_length,
        total_words=(m - 1) ** word_length,
        identity_words=len(identity_words),
        adjacent_equal=adjacent,
        pattern_counts=pattern_counts,
        exceptional=tuple(exceptional),
    )


def parse_group(spec: str) -> FiniteGroup:
    """Parse the CLI mini-language: 'cyclic:N', 'sym:M',
    'prod:<spec>,<spec>'."""
    spec = spec.strip()
    if spec.startswith("cyclic:"):
        return Cyclic(int(spec.split(":", 1)[1]))
    if spec.startswith("sym:"):
        return Symmetric(int(spec.split(":", 1)[1]))
    if spec.startswith("prod:"):
        body = spec[len("prod:"):]
        positions = [i for i, ch in enumerate(body) if ch == ","]
        for pos in positions:
            left, right = body[:pos], body[pos + 1:]
            try:
                return DirectProduct(parse_group(left), parse_group(right))
            except ValueError:
                continue
        raise ValueError(f"cannot split product spec {spec!r}")
    raise ValueError(f"unknown group spec {spec!r}")


def element_from_json(G: FiniteGroup, data):
    """Decode a group element: int for cyclic, one-line list for symmetric,
    [left, right] for products."""
    if isinstance(G, Cyclic):
        return int(data) % G.n
    if isinstance(G, Symmetric):
        t = tuple(int(v) for v in data)
        if sorted(t) != list(range(1, G.m + 1)):
            raise ValueError(f"{data!r} is not a permutation of 1..{G.m}")
        return t
    if isinstance(G, DirectProduct):
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ValueError(f"product element must be a pair, got {data!r}")
        return (element_from_json(G.g1, data[0]), element_from_json(G.g2, data[1]))
    raise ValueError(f"cannot decode elements of {G!r}")


def pair_from_json(data: dict) -> GroupPair:
    """Pair specification: {"group": "<spec>", "D": [element, ...]}."""
    if not isinstance(data, dict) or "group" not in data or "D" not in data:
        raise ValueError("pair JSON must have 'group' and 'D' keys")
    G = parse_group(data["group"])
    D = tuple(element_from_json(G, el) for el in data["D"])
    return GroupPair(G, D)
