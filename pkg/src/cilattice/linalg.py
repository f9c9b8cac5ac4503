"""Exact integer linear algebra: normal forms, sublattices of Z^m, p-saturation.

Everything here works on plain Python ints, so no intermediate result can
overflow.  Matrices are row-major tuples of tuples; lattices are always kept
in canonical row Hermite normal form so that two lattices are equal exactly
when their bases compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InfiniteIndex, NotASublattice

Vector = tuple  # tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix.  ``ncols`` is explicit so 0 x d matrices exist."""

    rows: tuple
    ncols: int

    @classmethod
    def of(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {ncols}")
        return cls(rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, i):
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols)),
                         len(self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def tolist(self) -> list:
        return [list(r) for r in self.rows]


def as_matrix(m, ncols: Optional[int] = None) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.of(m, ncols)


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list:
    """Product of two row-major integer matrices (b must have at least one row)."""
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def vec_combination(coeffs: Sequence[int], rows: Sequence[Sequence[int]], dim: int) -> Vector:
    out = [0] * dim
    for c, r in zip(coeffs, rows):
        if c:
            for j, x in enumerate(r):
                if x:
                    out[j] += c * x
    return tuple(out)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][col]
        for i in range(rk + 1, len(a)):
            f = a[i][col]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
        if rk == len(a):
            break
    return rk


# -- Hermite normal form ----------------------------------------------------------

def _hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> tuple:
    a = [list(r) for r in rows if any(r)]
    prow = 0
    for col in range(ncols):
        if prow == len(a):
            break
        nz = next((i for i in range(prow, len(a)) if a[i][col]), None)
        if nz is None:
            continue
        a[prow], a[nz] = a[nz], a[prow]
        top = a[prow]
        for i in range(prow + 1, len(a)):
            b = a[i][col]
            if not b:
                continue
            t = top[col]
            if b % t == 0:
                q = b // t
                a[i] = [y - q * x for x, y in zip(top, a[i])]
                continue
            g, x, y = xgcd(t, b)
            tg, bg = t // g, b // g
            row = a[i]
            top, a[i] = ([x * p + y * q for p, q in zip(top, row)],
                         [tg * q - bg * p for p, q in zip(top, row)])
        if top[col] < 0:
            top = [-x for x in top]
        a[prow] = top
        piv = top[col]
        for i in range(prow):
            q = a[i][col] // piv
            if q:
                a[i] = [y - q * x for x, y in zip(top, a[i])]
        prow += 1
    return tuple(tuple(r) for r in a[:prow])


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^m held by its canonical row Hermite normal form basis.

    Build instances with :func:`hnf` or :meth:`Lattice.span`; the raw
    constructor trusts that ``basis`` is already canonical.
    """

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, rows: Iterable[Sequence[int]], ambient_dim: Optional[int] = None) -> "Lattice":
        rows = [tuple(int(x) for x in r) for r in rows]
        if ambient_dim is None:
            if not rows:
                raise ValueError("ambient_dim is required for an empty generator list")
            ambient_dim = len(rows[0])
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError(f"generator {r} does not live in Z^{ambient_dim}")
        return cls(ambient_dim, _hnf_rows(rows, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def matrix(self) -> IntMatrix:
        return IntMatrix(self.basis, self.ambient_dim)

    def coordinates(self, v: Sequence[int]) -> Optional[tuple]:
        """Integer coefficients of ``v`` in the basis, or None if v is not in L."""
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        v = list(v)
        coeffs = []
        for row in self.basis:
            j = next(j for j, x in enumerate(row) if x)
            if any(v[:j]):
                return None
            q, r = divmod(v[j], row[j])
            if r:
                return None
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            return None
        return tuple(coeffs)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(r in self for r in other.basis)

    def element(self, coeffs: Sequence[int]) -> Vector:
        return vec_combination(coeffs, self.basis, self.ambient_dim)

    def project(self, coords: Sequence[int]) -> "Lattice":
        """Re-embed a lattice supported on ``coords`` into Z^len(coords)."""
        keep = set(coords)
        for r in self.basis:
            if any(x for j, x in enumerate(r) if j not in keep):
                raise ValueError("lattice is not supported on the given coordinates")
        return Lattice.span([[r[j] for j in coords] for r in self.basis], len(coords))

    def embed(self, coords: Sequence[int], ambient_dim: int) -> "Lattice":
        """Inverse of :meth:`project`: place coordinate i at position coords[i]."""
        return Lattice.span([embed_vector(r, coords, ambient_dim) for r in self.basis], ambient_dim)


def embed_vector(v: Sequence[int], coords: Sequence[int], ambient_dim: int) -> Vector:
    out = [0] * ambient_dim
    for j, x in zip(coords, v):
        out[j] = x
    return tuple(out)


def hnf(m, ncols: Optional[int] = None) -> Lattice:
    """Canonical lattice spanned by the rows of ``m`` (zero rows allowed)."""
    m = as_matrix(m, ncols)
    return Lattice(m.ncols, _hnf_rows(m.rows, m.ncols))


# -- Smith normal form ------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``left @ M @ right == diag`` with ``right @ right_inverse == I``."""

    left: tuple
    diagonal: tuple
    right: tuple
    right_inverse: tuple
    shape: tuple

    @property
    def factors(self) -> tuple:
        return self.diagonal

    def diagonal_matrix(self) -> list:
        r, c = self.shape
        d = [[0] * c for _ in range(r)]
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d


def smith_form(m, ncols: Optional[int] = None) -> SmithForm:
    m = as_matrix(m, ncols)
    nr, nc = m.shape
    d = [list(r) for r in m.rows]
    u = identity(nr)
    v = identity(nc)
    vi = identity(nc)

    def add_row(dst, src, q):  # row_dst -= q * row_src
        d[dst] = [a - q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]
        vi[src] = [a + q * b for a, b in zip(vi[src], vi[dst])]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if d[i][t]:
                    add_row(i, t, d[i][t] // p)
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, nc):
                if d[t][j]:
                    add_col(j, t, d[t][j] // p)
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    diag = tuple(d[i][i] for i in range(min(nr, nc)))
    return SmithForm(tuple(map(tuple, u)), diag, tuple(map(tuple, v)), tuple(map(tuple, vi)), (nr, nc))


def snf(m, ncols: Optional[int] = None) -> tuple:
    """Return ``(left, invariant_factors, right)`` with ``left @ M @ right`` diagonal."""
    s = smith_form(m, ncols)
    return s.left, s.diagonal, s.right


def left_kernel(m, ncols: Optional[int] = None) -> tuple:
    """HNF basis of {x in Z^r : x @ M = 0} for an r x c matrix M."""
    m = as_matrix(m, ncols)
    r, c = m.shape
    aug = [list(row) + [int(i == j) for j in range(r)] for i, row in enumerate(m.rows)]
    h = _hnf_rows(aug, c + r)
    return tuple(row[c:] for row in h if not any(row[:c]))


# -- operations on lattices -------------------------------------------------------

def pos_neg_parts(u: Sequence[int]) -> tuple:
    """Split ``u`` as ``u_plus - u_minus`` with disjointly supported nonnegative parts."""
    return tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u)


def restrict(lat: Lattice, coords: Iterable[int]) -> Lattice:
    """``L ∩ Z^E`` kept inside the ambient Z^m (coordinates outside E are zero)."""
    keep = set(coords)
    other = [j for j in range(lat.ambient_dim) if j not in keep]
    if not other or not lat.basis:
        return lat
    sub = IntMatrix(tuple(tuple(r[j] for j in other) for r in lat.basis), len(other))
    ker = left_kernel(sub)
    return Lattice.span([lat.element(k) for k in ker], lat.ambient_dim)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    return Lattice.span(a.basis + b.basis, a.ambient_dim)


def lattice_intersection(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    if not a.basis or not b.basis:
        return Lattice.zero(a.ambient_dim)
    stacked = [list(r) for r in a.basis] + [[-x for x in r] for r in b.basis]
    ker = left_kernel(stacked, a.ambient_dim)
    return Lattice.span([a.element(k[:a.rank]) for k in ker], a.ambient_dim)


@dataclass(frozen=True)
class QuotientInvariants:
    free_rank: int
    torsion: tuple = ()

    @property
    def order(self) -> Optional[int]:
        """Order of the quotient, None when it is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out


def coefficient_matrix(lat: Lattice, sub: Lattice) -> list:
    rows = []
    for r in sub.basis:
        c = lat.coordinates(r)
        if c is None:
            raise NotASublattice(f"{r} is not an element of the larger lattice")
        rows.append(list(c))
    return rows


def quotient_invariants(lat: Lattice, sub: Lattice) -> QuotientInvariants:
    """Structure of L/M for M ⊆ L: free rank and invariant factors >= 2."""
    if lat.ambient_dim != sub.ambient_dim:
        raise NotASublattice("lattices live in different ambient spaces")
    coeffs = coefficient_matrix(lat, sub)
    if not coeffs:
        return QuotientInvariants(lat.rank, ())
    factors = smith_form(coeffs, lat.rank).diagonal
    nonzero = [d for d in factors if d]
    return QuotientInvariants(lat.rank - len(nonzero), tuple(d for d in nonzero if d > 1))


def p_valuation(n: int, p: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def p_power_exponent(n: int, p: int) -> Optional[int]:
    """``k`` if ``|n| == p**k``, else None."""
    n = abs(n)
    if n == 0:
        return None
    k = p_valuation(n, p)
    return k if n == p ** k else None


def index_p_power(lat: Lattice, sub: Lattice, p: int) -> tuple:
    """Decide whether [L : M] is a finite power of p.

    Returns ``(True, k)`` when the index is ``p**k`` and ``(False, None)``
    otherwise.  Raises InfiniteIndex when the ranks differ.
    """
    if lat.rank != sub.rank:
        raise InfiniteIndex(f"ranks differ ({lat.rank} vs {sub.rank})")
    q = quotient_invariants(lat, sub)
    k = p_power_exponent(q.order, p)
    return (k is not None), k


def saturate_p(lat: Lattice, p: int) -> Lattice:
    """``(L : p^∞)``: every u with ``p**k * u`` in L for some k."""
    if not lat.basis:
        return lat
    s = smith_form(lat.basis, lat.ambient_dim)
    rows = []
    for d, w in zip(s.diagonal, s.right_inverse):
        if d:
            rows.append([(d // p ** p_valuation(d, p)) * x for x in w])
    return Lattice.span(rows, lat.ambient_dim)


def saturate_full(lat: Lattice) -> Lattice:
    """Smallest lattice containing L whose quotient of Z^m is torsion free."""
    if not lat.basis:
        return lat
    s = smith_form(lat.basis, lat.ambient_dim)
    return Lattice.span([w for d, w in zip(s.diagonal, s.right_inverse) if d], lat.ambient_dim)
