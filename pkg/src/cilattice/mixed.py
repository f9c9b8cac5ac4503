"""Mixed and dominating integer matrices.

A matrix is *mixed* when every row has a strictly positive and a strictly
negative entry, and *dominating* when no square submatrix is mixed.  Two
independent deciders live here: :func:`is_mixed_dominating` enumerates every
square submatrix, while :func:`is_mixed_dominating_fast` searches recursively
for a Fischer-Morris-Shapiro block decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .errors import PreconditionViolated, ZeroGluingVector
from .linalg import IntMatrix, as_matrix


def is_mixed(m) -> bool:
    m = as_matrix(m)
    return all(any(x > 0 for x in r) and any(x < 0 for x in r) for r in m.rows)


def _sign_masks(m: IntMatrix) -> tuple:
    pos, neg = [], []
    for r in m.rows:
        p = n = 0
        for j, x in enumerate(r):
            if x > 0:
                p |= 1 << j
            elif x < 0:
                n |= 1 << j
        pos.append(p)
        neg.append(n)
    return pos, neg


def find_square_mixed_submatrix(m) -> Optional[tuple]:
    """First ``(rows, cols)`` of a square mixed submatrix, by brute force."""
    m = as_matrix(m)
    nr, nc = m.shape
    pos, neg = _sign_masks(m)
    for k in range(1, min(nr, nc) + 1):
        col_masks = [(cols, sum(1 << j for j in cols)) for cols in combinations(range(nc), k)]
        for rows in combinations(range(nr), k):
            for cols, cm in col_masks:
                if all(pos[i] & cm and neg[i] & cm for i in rows):
                    return rows, cols
    return None


def is_mixed_dominating(m) -> bool:
    """Reference check: mixed, and no k x k submatrix (k >= 1) is mixed.

    The empty 0 x d matrix counts as mixed dominating.
    """
    m = as_matrix(m)
    return is_mixed(m) and find_square_mixed_submatrix(m) is None


@dataclass(frozen=True)
class FmsDecomposition:
    """Column split ``E1 | E2`` and row split ``S1 | S2 | {q}`` (0-based).

    Rows of ``S_j`` are supported in ``E_j``; row ``q`` is nonnegative on
    ``E1`` and nonpositive on ``E2``.
    """

    E1: tuple
    E2: tuple
    S1: tuple
    S2: tuple
    q: int

    def blocks(self, m) -> tuple:
        m = as_matrix(m)
        return m.submatrix(self.S1, self.E1), m.submatrix(self.S2, self.E2)


def is_valid_decomposition(m, d: FmsDecomposition) -> bool:
    """Structural invariants of ``d`` (block dominance is not checked)."""
    m = as_matrix(m)
    nr, nc = m.shape
    if not d.E1 or not d.E2 or set(d.E1) & set(d.E2) or set(d.E1) | set(d.E2) != set(range(nc)):
        return False
    rows = set(d.S1) | set(d.S2)
    if set(d.S1) & set(d.S2) or d.q in rows or rows | {d.q} != set(range(nr)):
        return False
    for S, E in ((d.S1, d.E1), (d.S2, d.E2)):
        allowed = set(E)
        if any(x for i in S for j, x in enumerate(m.rows[i]) if j not in allowed):
            return False
    uq = m.rows[d.q]
    return all(uq[j] >= 0 for j in d.E1) and all(uq[j] <= 0 for j in d.E2)


def candidate_decompositions(m) -> Iterator[FmsDecomposition]:
    """Structurally valid decompositions, ordered by q then by E1 bitmask.

    The bitmask of E1 has bit j set for column j.
    """
    m = as_matrix(m)
    nr, nc = m.shape
    for q in range(nr):
        parent = list(range(nc))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(nr):
            if i == q:
                continue
            support = [j for j, x in enumerate(m.rows[i]) if x]
            for j in support[1:]:
                a, b = find(support[0]), find(j)
                if a != b:
                    parent[a] = b
        comps: dict = {}
        for j in range(nc):
            comps.setdefault(find(j), []).append(j)
        uq = m.rows[q]
        forced1 = forced2 = 0
        free = []
        ok = True
        for cols in comps.values():
            mask = sum(1 << j for j in cols)
            has_pos = any(uq[j] > 0 for j in cols)
            has_neg = any(uq[j] < 0 for j in cols)
            if has_pos and has_neg:
                ok = False
                break
            if has_pos:
                forced1 |= mask
            elif has_neg:
                forced2 |= mask
            else:
                free.append(mask)
        if not ok:
            continue
        masks = []
        for pick in range(1 << len(free)):
            e1 = forced1
            for t, fm in enumerate(free):
                if pick >> t & 1:
                    e1 |= fm
            masks.append(e1)
        full = (1 << nc) - 1
        for e1 in sorted(masks):
            e2 = full & ~e1
            if not e1 or not e2:
                continue
            E1 = tuple(j for j in range(nc) if e1 >> j & 1)
            E2 = tuple(j for j in range(nc) if e2 >> j & 1)
            S1, S2 = [], []
            for i in range(nr):
                if i == q:
                    continue
                sup = sum(1 << j for j, x in enumerate(m.rows[i]) if x)
                (S1 if sup & e1 else S2).append(i)
            yield FmsDecomposition(E1, E2, tuple(S1), tuple(S2), q)


@lru_cache(maxsize=65536)
def _md_fast(m: IntMatrix) -> bool:
    if not m.rows:
        return True
    if not is_mixed(m):
        return False
    return _first_decomposition(m) is not None


def _first_decomposition(m: IntMatrix) -> Optional[FmsDecomposition]:
    for d in candidate_decompositions(m):
        b1, b2 = d.blocks(m)
        if _md_fast(b1) and _md_fast(b2):
            return d
    return None


def is_mixed_dominating_fast(m) -> bool:
    """Recursive decomposition check; agrees with :func:`is_mixed_dominating`."""
    return _md_fast(as_matrix(m))


def fms_decompose(m) -> FmsDecomposition:
    """Canonical decomposition of a mixed dominating matrix with >= 1 row.

    Tie-break: smallest q, then smallest E1 bitmask.
    """
    m = as_matrix(m)
    if m.nrows == 0 or m.ncols < m.nrows or not is_mixed(m):
        raise PreconditionViolated("fms_decompose needs a nonempty mixed dominating matrix")
    d = _first_decomposition(m)
    if d is None:
        raise PreconditionViolated("matrix is not mixed dominating")
    return d


def fms_tree(m) -> Optional[dict]:
    """Full recursive decomposition as nested dicts (None for an empty block)."""
    m = as_matrix(m)
    if m.nrows == 0:
        return None
    d = fms_decompose(m)
    b1, b2 = d.blocks(m)
    return {
        "q": d.q, "E1": d.E1, "E2": d.E2, "S1": d.S1, "S2": d.S2,
        "left": _relabel(fms_tree(b1), d.S1, d.E1),
        "right": _relabel(fms_tree(b2), d.S2, d.E2),
    }


def _relabel(node, rows, cols):
    if node is None:
        return None
    return {
        "q": rows[node["q"]],
        "E1": tuple(cols[j] for j in node["E1"]),
        "E2": tuple(cols[j] for j in node["E2"]),
        "S1": tuple(rows[i] for i in node["S1"]),
        "S2": tuple(rows[i] for i in node["S2"]),
        "left": _relabel(node["left"], rows, cols),
        "right": _relabel(node["right"], rows, cols),
    }


def block_compose(m1, m2, u_plus: Sequence[int], u_minus: Sequence[int]) -> IntMatrix:
    """``[[M1, 0], [0, M2], [u_plus, -u_minus]]``.

    With M1, M2 mixed dominating and both glue parts nonzero the result is
    mixed dominating again.
    """
    m1, m2 = as_matrix(m1), as_matrix(m2)
    n1, n2 = m1.ncols, m2.ncols
    if len(u_plus) != n1 or len(u_minus) != n2:
        raise ValueError("glue vector parts must match the block widths")
    if any(x < 0 for x in u_plus) or any(x < 0 for x in u_minus):
        raise ValueError("glue vector parts must be nonnegative")
    if not any(u_plus) or not any(u_minus):
        raise ZeroGluingVector("both parts of the glue row must be nonzero")
    rows = [tuple(r) + (0,) * n2 for r in m1.rows]
    rows += [(0,) * n1 + tuple(r) for r in m2.rows]
    rows.append(tuple(u_plus) + tuple(-x for x in u_minus))
    return IntMatrix(tuple(rows), n1 + n2)


def random_mixed_dominating(rng: random.Random, nrows: int, ncols: int, max_entry: int = 4,
                            shuffle: bool = True) -> IntMatrix:
    """Random mixed dominating matrix built by repeated block composition."""
    if nrows == 0:
        return IntMatrix((), ncols)
    if ncols < nrows + 1:
        raise ValueError("a mixed dominating matrix with r rows needs at least r + 1 columns")
    m = _random_md(rng, nrows, ncols, max_entry)
    if shuffle:
        rows = list(m.rows)
        rng.shuffle(rows)
        perm = list(range(ncols))
        rng.shuffle(perm)
        m = IntMatrix(tuple(tuple(r[j] for j in perm) for r in rows), ncols)
    return m


def _random_part(rng, n, max_entry):
    v = [rng.randint(0, max_entry) for _ in range(n)]
    if not any(v):
        v[rng.randrange(n)] = rng.randint(1, max_entry)
    return v


def _random_md(rng, r, n, max_entry):
    if r == 0:
        return IntMatrix((), n)
    r1 = rng.randint(0, r - 1)
    r2 = r - 1 - r1
    n1 = rng.randint(r1 + 1, n - r2 - 1)
    n2 = n - n1
    m1 = _random_md(rng, r1, n1, max_entry)
    m2 = _random_md(rng, r2, n2, max_entry)
    return block_compose(m1, m2, _random_part(rng, n1, max_entry), _random_part(rng, n2, max_entry))
