"""Exact integral simplicial homology via Smith normal form.

All arithmetic is over Python integers, so results are exact regardless of
entry growth during elimination.  Boundary matrices are kept sparse; the
reduction first splits off unit pivots (cheap, covers almost everything for
boundary matrices) and finishes the small remainder with a classical
gcd-based Smith reduction that yields the divisibility chain directly.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .complexes import Face, SimplicialComplex, face_key


class IntegerMatrix:
    """Sparse integer matrix with labeled rows and columns."""

    def __init__(self, n_rows: int, n_cols: int, entries: dict[tuple[int, int], int],
                 row_labels: Sequence | None = None, col_labels: Sequence | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = {k: v for k, v in entries.items() if v != 0}
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        return cls(n_rows, n_cols, entries)

    def to_dense(self) -> list[list[int]]:
        M = [[0] * self.n_cols for _ in range(self.n_rows)]
        for (i, j), v in self.entries.items():
            M[i][j] = v
        return M

    def column(self, j: int) -> dict[int, int]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.n_rows}x{self.n_cols}, {len(self.entries)} nonzero)"


def boundary_matrix(K: SimplicialComplex, i: int) -> IntegerMatrix:
    """Boundary map from i-chains to (i-1)-chains, alternating signs over
    the sorted vertex order."""
    if i < 1 or i > K.dim:
        raise ValueError(f"dimension {i} out of range for complex of dim {K.dim}")
    cols = K.faces(i)
    rows = K.faces(i - 1)
    row_index = {f: r for r, f in enumerate(rows)}
    entries: dict[tuple[int, int], int] = {}
    for c, face in enumerate(cols):
        for j in range(len(face)):
            sub = face[:j] + face[j + 1:]
            entries[(row_index[sub], c)] = (-1) ** j
    return IntegerMatrix(len(rows), len(cols), entries, row_labels=rows, col_labels=cols)


def boundary_composition_is_zero(K: SimplicialComplex, i: int) -> bool:
    """Check del_(i-1) o del_i = 0 by sparse composition."""
    if i < 2 or i > K.dim:
        raise ValueError("need 2 <= i <= dim")
    A = boundary_matrix(K, i - 1)
    B = boundary_matrix(K, i)
    a_cols: dict[int, dict[int, int]] = {}
    for (r, c), v in A.entries.items():
        a_cols.setdefault(c, {})[r] = v
    b_cols: dict[int, dict[int, int]] = {}
    for (r, c), v in B.entries.items():
        b_cols.setdefault(c, {})[r] = v
    for col in b_cols.values():
        acc: dict[int, int] = {}
        for mid, v in col.items():
            for r, w in a_cols.get(mid, {}).items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


def _to_row_col_dicts(M: IntegerMatrix):
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)
    return rows, cols


def _pop_shortest_row(rows, heap):
    """Pop the shortest live row from a lazy heap of (length, row_id)."""
    while heap:
        length, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is not None and len(row) == length:
            return r
    return None


def _eliminate_row(rows, cols, r, c, pivot_inverse, heap, modulus=0):
    """Clear column c using pivot row r, then drop row r and column c.

    Updated rows are re-pushed onto the selection heap.  With modulus 0 the
    arithmetic is over the integers (pivot_inverse is then the +-1 pivot
    itself); otherwise everything is reduced mod the modulus.
    """
    pivot_row = dict(rows[r])
    for r2 in list(cols[c]):
        if r2 == r:
            continue
        row2 = rows[r2]
        f = row2[c] * pivot_inverse
        for c2, v in pivot_row.items():
            nv = row2.get(c2, 0) - f * v
            if modulus:
                nv %= modulus
            if nv:
                row2[c2] = nv
                cols[c2].add(r2)
            elif c2 in row2:
                del row2[c2]
                cols[c2].discard(r2)
        if not row2:
            del rows[r2]
        else:
            heapq.heappush(heap, (len(row2), r2))
    for c2 in pivot_row:
        s = cols.get(c2)
        if s is not None:
            s.discard(r)
            if not s:
                del cols[c2]
    del rows[r]


def _eliminate_unit_pivots(rows, cols) -> int:
    """Split off pivots of absolute value 1, returning how many were found.

    Pivot selection prefers short rows (lazy heap) and, within a row, short
    columns, which keeps fill-in low on boundary matrices.  A row without
    unit entries is left alone until an elimination touches it again.  Each
    unit pivot contributes an invariant factor 1.
    """
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    count = 0
    while True:
        r = _pop_shortest_row(rows, heap)
        if r is None:
            return count
        row = rows[r]
        unit_cols = [c for c, v in row.items() if v == 1 or v == -1]
        if not unit_cols:
            continue
        c = min(unit_cols, key=lambda cc: (len(cols[cc]), cc))
        _eliminate_row(rows, cols, r, c, row[c], heap)
        count += 1


def _dense_smith(M: list[list[int]]) -> list[int]:
    """Classical Smith reduction of a small dense matrix; returns the
    divisibility-chain invariant factors (nonzero diagonal)."""
    M = [row[:] for row in M]
    m = len(M)
    n = len(M[0]) if m else 0
    factors = []
    t = 0
    while True:
        # find minimal nonzero entry at or after (t, t)
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] != 0 and (pivot is None or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]

        while True:
            # reduce column t
            done = True
            for i in range(t + 1, m):
                if M[i][t] == 0:
                    continue
                q = M[i][t] // M[t][t]
                for j in range(t, n):
                    M[i][j] -= q * M[t][j]
                if M[i][t] != 0:
                    # remainder is smaller; swap up and restart
                    M[t], M[i] = M[i], M[t]
                    done = False
            if not done:
                continue
            # reduce row t
            for j in range(t + 1, n):
                if M[t][j] == 0:
                    continue
                q = M[t][j] // M[t][t]
                for i in range(t, m):
                    M[i][j] -= q * M[i][t]
                if M[t][j] != 0:
                    for i in range(t, m):
                        M[i][t], M[i][j] = M[i][j], M[i][t]
                    done = False
            if done and all(M[i][t] == 0 for i in range(t + 1, m)) \
                    and all(M[t][j] == 0 for j in range(t + 1, n)):
                break

        # enforce divisibility: pivot must divide the rest of the matrix
        d = M[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if M[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, n):
                M[t][j] += M[offender][j]
            continue

        factors.append(abs(d))
        t += 1
        if t >= m or t >= n:
            break

    return factors


def smith_normal_form(M: IntegerMatrix) -> tuple[list[int], int]:
    """Invariant factors d1 | d2 | ... of M over the integers, plus rank.

    Exact over arbitrary-precision integers.  Unit pivots are split off a
    sparse representation first; the leftover block goes through a dense
    gcd-based reduction.
    """
    rows, cols = _to_row_col_dicts(M)
    ones = _eliminate_unit_pivots(rows, cols)
    if rows:
        row_ids = sorted(rows)
        col_ids = sorted(cols)
        ri = {r: i for i, r in enumerate(row_ids)}
        ci = {c: j for j, c in enumerate(col_ids)}
        dense = [[0] * len(col_ids) for _ in row_ids]
        for r, row in rows.items():
            for c, v in row.items():
                dense[ri[r]][ci[c]] = v
        rest = _dense_smith(dense)
    else:
        rest = []
    factors = [1] * ones + rest
    return factors, len(factors)


def rank_mod_p(M: IntegerMatrix, p: int) -> int:
    """Rank of M over GF(p) by sparse Gaussian elimination."""
    rows, cols = _to_row_col_dicts(M)
    for r in list(rows):
        row = rows[r]
        for c in list(row):
            v = row[c] % p
            if v:
                row[c] = v
            else:
                del row[c]
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]
        if not row:
            del rows[r]
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    rank = 0
    while True:
        r = _pop_shortest_row(rows, heap)
        if r is None:
            return rank
        row = rows[r]
        c = min(row, key=lambda cc: (len(cols[cc]), cc))
        _eliminate_row(rows, cols, r, c, pow(row[c], -1, p), heap, modulus=p)
        rank += 1


def normalize_torsion(values: Sequence[int]) -> tuple[int, ...]:
    """Invariant-factor normal form of a direct sum of cyclic groups Z/v.

    Recombines prime powers so the output is a divisibility chain, e.g.
    (2, 3) becomes (6,) and (2, 4, 3) becomes (2, 12).
    """
    by_prime: dict[int, list[int]] = {}
    for v in values:
        if v <= 1:
            raise ValueError("torsion orders must be > 1")
        n = v
        f = 2
        while f * f <= n:
            if n % f == 0:
                e = 0
                while n % f == 0:
                    n //= f
                    e += 1
                by_prime.setdefault(f, []).append(e)
            f += 1
        if n > 1:
            by_prime.setdefault(n, []).append(1)
    if not by_prime:
        return ()
    depth = max(len(es) for es in by_prime.values())
    chain = []
    for slot in range(depth):
        d = 1
        for p, es in by_prime.items():
            es_sorted = sorted(es)
            # right-align exponents so the largest land in the last factor
            idx = slot - (depth - len(es_sorted))
            if idx >= 0:
                d *= p ** es_sorted[idx]
        chain.append(d)
    return tuple(c for c in chain if c > 1)


@dataclass(frozen=True)
class HomologyProfile:
    """Per-dimension Betti ranks and torsion invariant factors (unreduced)."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def betti(self, i: int) -> int:
        return self.groups[i][0] if 0 <= i < len(self.groups) else 0

    def torsion(self, i: int) -> tuple[int, ...]:
        return self.groups[i][1] if 0 <= i < len(self.groups) else ()

    @property
    def top_dim(self) -> int:
        return len(self.groups) - 1

    def trimmed(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        groups = list(self.groups)
        while len(groups) > 1 and groups[-1] == (0, ()):
            groups.pop()
        return tuple(groups)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyProfile):
            return NotImplemented
        return self.trimmed() == other.trimmed()

    def __hash__(self) -> int:
        return hash(self.trimmed())

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, (b, _) in enumerate(self.groups))

    def is_point(self) -> bool:
        return self.trimmed() == ((1, ()),)

    def to_json(self) -> dict:
        return {"H": [{"betti": b, "torsion": list(t)} for b, t in self.groups]}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyProfile":
        if not isinstance(data, dict) or "H" not in data:
            raise ValueError("profile JSON must be an object with an 'H' key")
        groups = tuple(
            (int(h["betti"]), normalize_torsion([int(t) for t in h.get("torsion", [])]))
            for h in data["H"]
        )
        return cls(groups)

    def paper_tuple(self) -> str:
        """Render as in '(Z, Z+Z/2, 0, ...)', with exponents for large
        multiplicities, e.g. 'Z^165+(Z/2)^41'."""

        def run(term: str, count: int) -> list[str]:
            if count > 3:
                base = term if "/" not in term else f"({term})"
                return [f"{base}^{count}"]
            return [term] * count

        parts = []
        for b, tors in self.trimmed():
            terms = run("Z", b)
            i = 0
            while i < len(tors):
                j = i
                while j < len(tors) and tors[j] == tors[i]:
                    j += 1
                terms.extend(run(f"Z/{tors[i]}", j - i))
                i = j
            parts.append("+".join(terms) if terms else "0")
        return "(" + ", ".join(parts) + ", 0, ...)"


def profile(groups: Sequence[tuple[int, Sequence[int]]]) -> HomologyProfile:
    return HomologyProfile(tuple((b, normalize_torsion(list(t))) for b, t in groups))


def homology(K: SimplicialComplex) -> HomologyProfile:
    """Unreduced integral homology in every dimension 0..dim K."""
    if not K.facets:
        raise ValueError("homology of the empty complex")
    d = K.dim
    n_faces = [len(K.faces(i)) for i in range(d + 1)]
    ranks = [0] * (d + 2)        # ranks[i] = rank of boundary_i; 0 for i=0 and i=d+1
    torsion = [()] * (d + 1)     # torsion[i] comes from boundary_(i+1)
    for i in range(1, d + 1):
        factors, rank = smith_normal_form(boundary_matrix(K, i))
        ranks[i] = rank
        torsion[i - 1] = tuple(f for f in factors if f > 1)
    groups = tuple(
        (n_faces[i] - ranks[i] - ranks[i + 1], normalize_torsion(torsion[i]))
        for i in range(d + 1)
    )
    return HomologyProfile(groups)


def betti_mod_p(K: SimplicialComplex, p: int) -> list[int]:
    """Betti numbers with GF(p) coefficients; an independent consistency
    route against the integral computation (universal coefficients)."""
    d = K.dim
    n_faces = [len(K.faces(i)) for i in range(d + 1)]
    ranks = [0] * (d + 2)
    for i in range(1, d + 1):
        ranks[i] = rank_mod_p(boundary_matrix(K, i), p)
    return [n_faces[i] - ranks[i] - ranks[i + 1] for i in range(d + 1)]


def universal_coefficients_consistent(K: SimplicialComplex, zprofile: HomologyProfile, p: int) -> bool:
    """dim H_i(K; F_p) == betti_i + t_i(p) + t_(i-1)(p) for all i."""
    mod = betti_mod_p(K, p)
    for i in range(len(mod)):
        t_i = sum(1 for t in zprofile.torsion(i) if t % p == 0)
        t_prev = sum(1 for t in zprofile.torsion(i - 1) if t % p == 0) if i >= 1 else 0
        if mod[i] != zprofile.betti(i) + t_i + t_prev:
            return False
    return True


def wedge_prediction(base: HomologyProfile, n: int, l: int) -> HomologyProfile:
    """Profile of an n-fold wedge of `base` with l extra circles.

    The base must be the profile of a connected complex (betti_0 == 1).
    """
    if base.betti(0) != 1:
        raise ValueError("base profile must be connected (betti_0 == 1)")
    if n < 1 or l < 0:
        raise ValueError("need n >= 1 and l >= 0")
    top = max(base.top_dim, 1)
    groups = []
    for i in range(top + 1):
        if i == 0:
            groups.append((1, ()))
            continue
        b = n * base.betti(i) + (l if i == 1 else 0)
        tors = normalize_torsion(list(base.torsion(i)) * n)
        groups.append((b, tors))
    return HomologyProfile(tuple(groups))
