"""Semigroups in Z^n ⊕ T and their kernel lattices.

A presentation lists m generators ``a_i = (free part, torsion residues)``;
its kernel lattice is ``ker(Z^m -> Z^n ⊕ T, e_i -> a_i)``.  Conversely every
lattice L yields the semigroup generated by the classes ``e_i + L`` in
``Z^m / L``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError, NotAdmissible, NotPositive
from .geometry import extreme_rays, positive_grading
from .gluing import EXACT, Mode, gluing_vector
from .linalg import Lattice, left_kernel, rank, smith_form


@dataclass(frozen=True)
class SemigroupPresentation:
    free_rank: int
    torsion_orders: tuple
    generators: tuple  # ((free, torsion), ...)

    @classmethod
    def create(cls, free_rank: int, torsion_orders: Sequence[int],
               generators: Sequence[tuple]) -> "SemigroupPresentation":
        """Validate shapes and reduce torsion residues modulo their orders."""
        orders = tuple(int(d) for d in torsion_orders)
        if free_rank < 0:
            raise InputError("free rank must be nonnegative")
        if any(d < 2 for d in orders):
            raise InputError("torsion orders must be at least 2")
        if not generators:
            raise InputError("a presentation needs at least one generator")
        gens = []
        for free, tors in generators:
            free, tors = tuple(int(x) for x in free), tuple(int(x) for x in tors)
            if len(free) != free_rank or len(tors) != len(orders):
                raise InputError(f"generator {free, tors} does not match Z^{free_rank} ⊕ T{orders}")
            gens.append((free, tuple(x % d for x, d in zip(tors, orders))))
        return cls(free_rank, orders, tuple(gens))

    @classmethod
    def affine(cls, vectors: Sequence[Sequence[int]]) -> "SemigroupPresentation":
        vectors = [tuple(v) for v in vectors]
        return cls.create(len(vectors[0]), (), [(v, ()) for v in vectors])

    @classmethod
    def from_flat(cls, vectors: Sequence[Sequence[int]], torsion_orders: Sequence[int]):
        """Generators written as flat tuples whose trailing entries are torsion residues."""
        t = len(torsion_orders)
        vectors = [tuple(v) for v in vectors]
        n = len(vectors[0]) - t
        return cls.create(n, torsion_orders, [(v[:n], v[n:]) for v in vectors])

    @property
    def m(self) -> int:
        return len(self.generators)

    def evaluate(self, coeffs: Sequence[int]) -> tuple:
        """Image of ``coeffs`` under ``e_i -> a_i``, as ``(free, torsion)``."""
        free = [0] * self.free_rank
        tors = [0] * len(self.torsion_orders)
        for c, (f, t) in zip(coeffs, self.generators):
            if c:
                free = [a + c * b for a, b in zip(free, f)]
                tors = [a + c * b for a, b in zip(tors, t)]
        return tuple(free), tuple(x % d for x, d in zip(tors, self.torsion_orders))

    def projected(self) -> list:
        return [f for f, _ in self.generators]


def kernel_lattice(pres: SemigroupPresentation) -> Lattice:
    m, n, t = pres.m, pres.free_rank, len(pres.torsion_orders)
    rows = [list(f) + list(r) for f, r in pres.generators]
    for j, d in enumerate(pres.torsion_orders):
        rows.append([0] * n + [d if k == j else 0 for k in range(t)])
    if n + t == 0:
        return Lattice.span([[int(i == j) for j in range(m)] for i in range(m)], m)
    ker = left_kernel(rows, n + t)
    return Lattice.span([k[:m] for k in ker], m)


def has_no_invertibles(pres: SemigroupPresentation) -> bool:
    return positive_grading(kernel_lattice(pres)) is not None


def associated_semigroup(lat: Lattice) -> SemigroupPresentation:
    """Images of e_1..e_m in ``Z^m / L ≅ Z^n ⊕ ⊕ Z/d_j`` via Smith normal form."""
    if positive_grading(lat) is None:
        raise NotPositive("associated semigroup needs a positive lattice")
    m, r = lat.ambient_dim, lat.rank
    if r == 0:
        return SemigroupPresentation.create(m, (), [(tuple(int(i == j) for j in range(m)), ())
                                                    for i in range(m)])
    s = smith_form(lat.basis, m)
    tors = [(j, d) for j, d in enumerate(s.diagonal) if d > 1]
    gens = []
    for i in range(m):
        row = s.right[i]
        gens.append((tuple(row[r:]), tuple(row[j] for j, _ in tors)))
    return SemigroupPresentation.create(m - r, [d for _, d in tors], gens)


def semigroup_gluing_check(pres: SemigroupPresentation, E1, E2, mode: Mode = EXACT) -> tuple:
    """``(True, a)`` if NA is the (p-)gluing of NA^E1 and NA^E2, else ``(False, None)``.

    Decided on the kernel lattice; the witness is ``a = sum_{i in E1} u_i a_i``
    for the lattice gluing vector u.
    """
    found = gluing_vector(kernel_lattice(pres), E1, E2, mode)
    if found is None:
        return False, None
    u, _ = found
    return True, pres.evaluate([max(x, 0) for x in u])


@dataclass(frozen=True)
class ConeReport:
    dimension: int
    rays: tuple
    ray_vectors: tuple
    count: int
    bound_2n_minus_2: Optional[bool]


def cone_report(pres: SemigroupPresentation) -> ConeReport:
    """Extreme rays of the cone over the torsion-free projections of the generators."""
    if not has_no_invertibles(pres):
        raise NotAdmissible("the semigroup has invertible elements")
    proj = pres.projected()
    dim = rank(proj) if pres.free_rank else 0
    rays = tuple(extreme_rays(proj)) if pres.free_rank else ()
    flag = len(rays) <= 2 * dim - 2 if dim >= 2 else None
    return ConeReport(dim, rays, tuple(proj[i] for i in rays), len(rays), flag)
