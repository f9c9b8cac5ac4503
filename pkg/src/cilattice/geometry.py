"""Exact rational polyhedral computations.

A single Fourier-Motzkin engine (``Projection``) answers every question in
this module: positivity of a lattice, integer points of a bounded polytope
given as a coset meeting an orthant, and extreme rays of a generated cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import NotPositive, NotStronglyConvex
from .linalg import Lattice, left_kernel, rank

GE, LE, FREE = 1, -1, 0


@dataclass(frozen=True)
class SignPattern:
    """Per-coordinate requirement: ``1`` for >= 0, ``-1`` for <= 0, ``0`` free."""

    signs: tuple

    @classmethod
    def on(cls, ambient_dim: int, nonneg=(), nonpos=()) -> "SignPattern":
        s = [FREE] * ambient_dim
        for j in nonneg:
            s[j] = GE
        for j in nonpos:
            s[j] = LE
        return cls(tuple(s))

    def __len__(self):
        return len(self.signs)

    def accepts(self, v: Sequence[int]) -> bool:
        return all(s == FREE or s * x >= 0 for s, x in zip(self.signs, v))


# -- Fourier-Motzkin --------------------------------------------------------------

def _normalize(coeffs, bound):
    """Scale ``coeffs . x <= bound`` to primitive integer coefficients."""
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        return tuple(ints), Fraction(bound)
    return tuple(c // g for c in ints), Fraction(bound) * den / g


class Projection:
    """Successive Fourier-Motzkin projections of ``{x : A x <= b}``.

    ``systems[j]`` constrains only ``x_0 .. x_{j-1}``; variables are
    eliminated from the last one down.  Chernikov's rule drops combinations
    whose history is too large, which keeps desk-scale systems small.
    """

    def __init__(self, rows: Sequence[Sequence], bounds: Sequence, nvars: int):
        self.nvars = nvars
        current = {}
        self.feasible = True
        for i, (a, b) in enumerate(zip(rows, bounds)):
            if len(a) != nvars:
                raise ValueError("constraint has wrong length")
            self._add(current, *_normalize(a, b), frozenset([i]))
        systems = [None] * (nvars + 1)
        systems[nvars] = current
        for k in range(nvars - 1, -1, -1):
            eliminated = nvars - k
            pos, neg, nxt = [], [], {}
            for a, (b, h) in systems[k + 1].items():
                if a[k] > 0:
                    pos.append((a, b, h))
                elif a[k] < 0:
                    neg.append((a, b, h))
                else:
                    self._add(nxt, a[:k], b, h)
            for ap, bp, hp in pos:
                for an, bn, hn in neg:
                    h = hp | hn
                    if len(h) > eliminated + 1:
                        continue
                    sp, sn = -an[k], ap[k]
                    a = [sp * x + sn * y for x, y in zip(ap[:k], an[:k])]
                    self._add(nxt, *_normalize(a, sp * bp + sn * bn), h)
            systems[k] = nxt
        self.systems = systems

    def _add(self, store, a, b, h):
        if not any(a):
            if b < 0:
                self.feasible = False
            return
        old = store.get(a)
        if old is None or b < old[0] or (b == old[0] and len(h) < len(old[1])):
            store[a] = (b, h)

    def interval(self, prefix: Sequence) -> tuple:
        """Bounds ``(lo, hi)`` for ``x_j`` (j = len(prefix)) given x_0..x_{j-1}.

        ``None`` stands for an infinite bound.
        """
        j = len(prefix)
        lo = hi = None
        for a, (b, _) in self.systems[j + 1].items():
            rest = b - sum(c * x for c, x in zip(a, prefix))
            c = a[j]
            if c > 0:
                v = Fraction(rest) / c
                if hi is None or v < hi:
                    hi = v
            elif c < 0:
                v = Fraction(rest) / c
                if lo is None or v > lo:
                    lo = v
            elif rest < 0:
                return Fraction(1), Fraction(0)
        return lo, hi

    def rational_point(self) -> Optional[tuple]:
        if not self.feasible:
            return None
        x = []
        for _ in range(self.nvars):
            lo, hi = self.interval(x)
            if lo is not None and hi is not None and lo > hi:
                return None
            x.append(_pick(lo, hi))
        return tuple(x)

    def integer_points(self) -> Iterator[tuple]:
        """All integer points in lexicographic order.

        Raises ``ValueError`` if some coordinate is unbounded along the way.
        """
        if not self.feasible:
            return
        n = self.nvars
        if n == 0:
            yield ()
            return
        # iterative DFS with per-level ranges
        ranges = []
        prefix = []
        while True:
            if len(ranges) == len(prefix):
                lo, hi = self.interval(prefix)
                if lo is None or hi is None:
                    raise ValueError(f"coordinate {len(prefix)} is unbounded")
                ranges.append([math.ceil(lo), math.floor(hi)])
            cur = ranges[-1]
            if cur[0] > cur[1]:
                ranges.pop()
                if not prefix:
                    return
                prefix.pop()
                continue
            value = cur[0]
            cur[0] += 1
            if len(prefix) + 1 == n:
                yield tuple(prefix) + (value,)
                continue
            prefix.append(value)


def _pick(lo, hi):
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return min(Fraction(0), Fraction(math.floor(hi)))
    if hi is None:
        return max(Fraction(0), Fraction(math.ceil(lo)))
    if lo <= 0 <= hi:
        return Fraction(0)
    if lo > 0 and math.ceil(lo) <= hi:
        return Fraction(math.ceil(lo))
    if hi < 0 and math.floor(hi) >= lo:
        return Fraction(math.floor(hi))
    return lo


def find_point(rows, bounds, nvars) -> Optional[tuple]:
    """A rational solution of ``rows @ x <= bounds`` or None."""
    return Projection(rows, bounds, nvars).rational_point()


def affine_solutions(columns: Sequence[Sequence], target: Sequence) -> Optional[tuple]:
    """Solve ``sum_i x_i * columns[i] == target`` over Q.

    Returns ``(particular, kernel)`` where every solution is
    ``particular + t @ kernel``, or None if there is no solution.
    """
    n = len(columns)
    dim = len(target)
    a = [[Fraction(columns[i][j]) for i in range(n)] + [Fraction(target[j])] for j in range(dim)]
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, dim) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(dim):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    if any(a[i][n] for i in range(r, dim)):
        return None
    part = [Fraction(0)] * n
    for i, c in enumerate(piv):
        part[c] = a[i][n]
    free = [c for c in range(n) if c not in piv]
    kernel = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -a[i][f]
        kernel.append(tuple(v))
    return tuple(part), tuple(kernel)


def _primitive(v: Sequence[Fraction]) -> tuple:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


# -- public operations ------------------------------------------------------------

def positive_grading(lat: Lattice) -> Optional[tuple]:
    """A strictly positive vector orthogonal to L, or None if L meets N^m \\ {0}.

    The result is scaled to a primitive integer vector (entries as Fractions).
    """
    m = lat.ambient_dim
    if not lat.basis:
        return tuple(Fraction(1) for _ in range(m))
    transposed = [[r[j] for r in lat.basis] for j in range(m)]
    kernel = left_kernel(transposed, lat.rank)  # c with B c = 0
    k = len(kernel)
    if k == 0:
        return None
    rows = [[-kernel[t][i] for t in range(k)] for i in range(m)]
    t = find_point(rows, [-1] * m, k)
    if t is None:
        return None
    c = [sum(t[s] * kernel[s][i] for s in range(k)) for i in range(m)]
    return tuple(Fraction(x) for x in _primitive(c))


def is_positive(lat: Lattice) -> bool:
    return positive_grading(lat) is not None


def positivity_witness(lat: Lattice) -> Optional[tuple]:
    """A nonzero element of L ∩ N^m, or None when L is positive."""
    r, m = lat.rank, lat.ambient_dim
    if r == 0:
        return None
    rows = [[-lat.basis[i][j] for i in range(r)] for j in range(m)]
    bounds = [0] * m
    rows.append([-sum(lat.basis[i]) for i in range(r)])
    bounds.append(-1)
    lam = find_point(rows, bounds, r)
    if lam is None:
        return None
    lam = _primitive(lam)
    return lat.element(lam)


def _orthant_system(w0: Sequence[int], basis: Sequence[Sequence[int]], pattern: SignPattern):
    rows, bounds = [], []
    for j, s in enumerate(pattern.signs):
        if s == FREE:
            continue
        col = [r[j] for r in basis]
        # s * (w0_j + lambda . col) >= 0
        rows.append([-s * c for c in col])
        bounds.append(s * w0[j])
    return rows, bounds


def coset_orthant_solve(w0: Sequence[int], lat: Lattice, pattern: SignPattern) -> list:
    """All integer λ with ``w0 + λ @ basis(B)`` obeying ``pattern``, in lex order.

    Completeness relies on B being positive on the constrained coordinates,
    which makes the feasible λ-region a bounded polytope.
    """
    return list(iter_coset_orthant(w0, lat, pattern))


def iter_coset_orthant(w0: Sequence[int], lat: Lattice, pattern: SignPattern) -> Iterator[tuple]:
    if len(w0) != lat.ambient_dim or len(pattern) != lat.ambient_dim:
        raise ValueError("dimension mismatch")
    rows, bounds = _orthant_system(w0, lat.basis, pattern)
    proj = Projection(rows, bounds, lat.rank)
    try:
        yield from proj.integer_points()
    except ValueError as exc:
        raise NotPositive(f"coset search is unbounded: {exc}") from None


def coset_orthant_feasible_q(w0: Sequence, lat: Lattice, pattern: SignPattern) -> bool:
    """Rational relaxation of :func:`coset_orthant_solve`."""
    rows, bounds = _orthant_system(w0, lat.basis, pattern)
    return Projection(rows, bounds, lat.rank).rational_point() is not None


def _positively_parallel(a: Sequence[int], b: Sequence[int]) -> bool:
    if sum(x * y for x, y in zip(a, b)) <= 0:
        return False
    return rank([a, b]) == 1


def strictly_positive_functional(gens: Sequence[Sequence[int]]) -> Optional[tuple]:
    nz = [g for g in gens if any(g)]
    if not nz:
        return ()
    n = len(nz[0])
    return find_point([[-x for x in g] for g in nz], [-1] * len(nz), n)


def extreme_rays(gens: Sequence[Sequence[int]]) -> list:
    """Indices of the generators spanning extreme rays of ``pos_Q(gens)``.

    Parallel generators collapse onto the smallest index.  Raises
    NotStronglyConvex when the cone contains a line.
    """
    gens = [tuple(g) for g in gens]
    if strictly_positive_functional(gens) is None:
        raise NotStronglyConvex("cone contains a nonzero vector and its negation")
    keep = []
    for i, g in enumerate(gens):
        if not any(g):
            continue
        if any(_positively_parallel(g, gens[j]) for j in range(i)):
            continue
        others = [h for h in gens if any(h) and not _positively_parallel(g, h)]
        if not _in_cone(g, others):
            keep.append(i)
    return keep


def _in_cone(v: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    if not gens:
        return False
    sol = affine_solutions(gens, v)
    if sol is None:
        return False
    part, kernel = sol
    k = len(kernel)
    # part + t @ kernel >= 0
    rows = [[-kernel[s][i] for s in range(k)] for i in range(len(gens))]
    return find_point(rows, list(part), k) is not None
