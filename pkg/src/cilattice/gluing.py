"""Lattice gluing and the complete-intersection deciders.

A positive lattice L ⊂ Z^m is *glued* along a coordinate split E1 | E2 when
some u ∈ L, nonnegative on E1 and nonpositive on E2, completes
``L_E1 + L_E2`` to all of L (exact mode) or to a sublattice of p-power index
(p-power mode).  Recursing on ``L_E1`` and ``L_E2`` down to rank 0 decides
whether the lattice ideal is a complete intersection (exact) or a
set-theoretic complete intersection on binomials in characteristic p.

Every "yes" carries a :class:`Node`/:class:`Leaf` certificate tree, and
:func:`verify_certificate` re-checks it along an independent route
(mixed dominance of the glue vectors plus a span/index comparison).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import BadPartition, MalformedCertificate, NotPositive, PreconditionViolated
from .geometry import (
    SignPattern,
    coset_orthant_feasible_q,
    iter_coset_orthant,
    positive_grading,
    positivity_witness,
)
from .linalg import (
    Lattice,
    IntMatrix,
    coefficient_matrix,
    embed_vector,
    index_p_power,
    lattice_sum,
    p_power_exponent,
    quotient_invariants,
    rank,
    restrict,
    smith_form,
    vec_combination,
)
from .mixed import is_mixed_dominating_fast

YES = "yes"
NO = "no"
NO_WITHIN_BOUND = "no_within_bound"

DEFAULT_MAX_EXP = 8


@dataclass(frozen=True)
class Mode:
    """Exact gluing when ``p`` is None, otherwise p-gluing up to ``p**max_exp``."""

    p: Optional[int] = None
    max_exp: int = DEFAULT_MAX_EXP

    @property
    def exact(self) -> bool:
        return self.p is None


EXACT = Mode()


def p_power(p: int, max_exp: int = DEFAULT_MAX_EXP) -> Mode:
    if p < 2:
        raise ValueError("p must be a prime")
    return Mode(p, max_exp)


@dataclass(frozen=True)
class Leaf:
    coords: tuple


@dataclass(frozen=True)
class Node:
    E1: tuple
    E2: tuple
    u: tuple
    index_exponent: int
    left: "Certificate"
    right: "Certificate"

    @property
    def coords(self) -> tuple:
        return tuple(sorted(self.E1 + self.E2))


Certificate = Union[Leaf, Node]


@dataclass(frozen=True)
class Verdict:
    outcome: str
    certificate: Optional[Certificate] = None
    diagnostics: str = ""
    characteristic: int = 0

    @property
    def yes(self) -> bool:
        return self.outcome == YES


@dataclass(frozen=True)
class GluingSearch:
    """Result of one partition search.

    ``u`` is None when no gluing vector was found; ``exhausted`` tells
    whether that was only up to the exponent bound.
    """

    u: Optional[tuple] = None
    index_exponent: int = 0
    exhausted: bool = False
    reason: str = ""


def _check_partition(m: int, E1, E2) -> tuple:
    E1, E2 = tuple(sorted(E1)), tuple(sorted(E2))
    if not E1 or not E2:
        raise BadPartition("both parts must be nonempty")
    if set(E1) & set(E2):
        raise BadPartition("parts overlap")
    if set(E1) | set(E2) != set(range(m)) or len(E1) + len(E2) != m:
        raise BadPartition(f"parts must cover 0..{m - 1} exactly")
    return E1, E2


def gluing_search(lat: Lattice, E1, E2, mode: Mode = EXACT) -> GluingSearch:
    m = lat.ambient_dim
    E1, E2 = _check_partition(m, E1, E2)
    r = lat.rank
    if r == 0:
        raise PreconditionViolated("gluing needs a lattice of rank >= 1")
    l1, l2 = restrict(lat, E1), restrict(lat, E2)
    if l1.rank + l2.rank + 1 != r:
        return GluingSearch(reason=f"rank {r} != {l1.rank} + {l2.rank} + 1")
    inner = lattice_sum(l1, l2)
    smith = smith_form(coefficient_matrix(lat, inner), r)
    # rows of right_inverse @ basis form a basis of L adapted to L_E1 + L_E2
    adapted = [vec_combination(w, lat.basis, m) for w in smith.right_inverse]
    free = adapted[r - 1]
    torsion = [(d, adapted[j]) for j, d in enumerate(smith.diagonal) if d > 1]
    if mode.exact:
        if torsion:
            return GluingSearch(reason=f"quotient has torsion {[d for d, _ in torsion]}")
        for sign in (1, -1):
            u = _solve_class(l1, l2, [sign * x for x in free], E1, E2)
            if u is not None:
                return GluingSearch(u, 0)
        return GluingSearch(reason="no element of the generating classes has the sign pattern")

    p = mode.p
    torsion_exp = 0
    for d, _ in torsion:
        k = p_power_exponent(d, p)
        if k is None:
            return GluingSearch(reason=f"quotient torsion {d} is not a power of {p}")
        torsion_exp += k
    pat1 = SignPattern.on(m, nonneg=E1)
    pat2 = SignPattern.on(m, nonpos=E2)
    signs = [s for s in (1, -1)
             if coset_orthant_feasible_q([s * x for x in free], l1, pat1)
             and coset_orthant_feasible_q([s * x for x in free], l2, pat2)]
    if not signs:
        return GluingSearch(reason="sign pattern infeasible even over Q")
    residues = list(itertools.product(*(range(d) for d, _ in torsion)))
    for e in range(mode.max_exp + 1):
        t = p ** e
        for sign in signs:
            for g in residues:
                w0 = [sign * t * x for x in free]
                for gj, (_, w) in zip(g, torsion):
                    if gj:
                        w0 = [a + gj * b for a, b in zip(w0, w)]
                u = _solve_class(l1, l2, w0, E1, E2)
                if u is not None:
                    return GluingSearch(u, e + torsion_exp)
    return GluingSearch(exhausted=True, reason=f"no gluing vector with index up to {p}^{mode.max_exp}")


def _solve_class(l1: Lattice, l2: Lattice, w0, E1, E2) -> Optional[tuple]:
    m = l1.ambient_dim
    lam1 = next(iter_coset_orthant(w0, l1, SignPattern.on(m, nonneg=E1)), None)
    if lam1 is None:
        return None
    lam2 = next(iter_coset_orthant(w0, l2, SignPattern.on(m, nonpos=E2)), None)
    if lam2 is None:
        return None
    u = list(w0)
    for part in (l1.element(lam1), l2.element(lam2)):
        u = [a + b for a, b in zip(u, part)]
    return tuple(u)


def gluing_vector(lat: Lattice, E1, E2, mode: Mode = EXACT) -> Optional[tuple]:
    """``(u, index_exponent)`` gluing L along E1 | E2, or None."""
    res = gluing_search(lat, E1, E2, mode)
    if res.u is None:
        return None
    return res.u, res.index_exponent


# -- deciders ---------------------------------------------------------------------

def _require_positive(lat: Lattice) -> None:
    if positive_grading(lat) is None:
        w = positivity_witness(lat)
        raise NotPositive(f"lattice is not positive: {w} lies in L ∩ N^m", witness=w)


def _partitions(m: int):
    """Splits with coordinate 0 in E1, ordered by the bitmask of E1."""
    full = (1 << m) - 1
    for mask in range(1, full, 2):
        yield (tuple(j for j in range(m) if mask >> j & 1),
               tuple(j for j in range(m) if not mask >> j & 1))


@dataclass
class _Search:
    mode: Mode
    memo: dict = field(default_factory=dict)
    partitions_tried: int = 0

    def run(self, lat: Lattice) -> tuple:
        hit = self.memo.get(lat)
        if hit is not None:
            return hit
        out = self._run(lat)
        self.memo[lat] = out
        return out

    def _run(self, lat: Lattice) -> tuple:
        m, r = lat.ambient_dim, lat.rank
        if r == 0:
            return YES, Leaf(tuple(range(m)))
        bounded = False
        cols = [[row[j] for row in lat.basis] for j in range(m)]
        for E1, E2 in _partitions(m):
            # rank(L_E) = r - rank of the basis columns outside E
            if rank([cols[j] for j in E1]) + rank([cols[j] for j in E2]) != r + 1:
                continue
            self.partitions_tried += 1
            res = gluing_search(lat, E1, E2, self.mode)
            if res.u is None:
                bounded = bounded or res.exhausted
                continue
            children = []
            for E in (E1, E2):
                child = restrict(lat, E).project(E)
                status, cert = self.run(child)
                if status != YES:
                    bounded = bounded or status == NO_WITHIN_BOUND
                    break
                children.append(_relabel(cert, E, m))
            else:
                return YES, Node(E1, E2, res.u, res.index_exponent, children[0], children[1])
        return (NO_WITHIN_BOUND if bounded else NO), None


def _relabel(cert: Certificate, coords: Sequence[int], dim: int) -> Certificate:
    """Move a certificate from Z^len(coords) into the parent's Z^dim."""
    if isinstance(cert, Leaf):
        return Leaf(tuple(coords[j] for j in cert.coords))
    return Node(
        tuple(coords[j] for j in cert.E1),
        tuple(coords[j] for j in cert.E2),
        embed_vector(cert.u, coords, dim),
        cert.index_exponent,
        _relabel(cert.left, coords, dim),
        _relabel(cert.right, coords, dim),
    )


def _decide(lat: Lattice, mode: Mode, characteristic: int) -> Verdict:
    _require_positive(lat)
    search = _Search(mode)
    status, cert = search.run(lat)
    kind = "glued" if mode.exact else f"{mode.p}-glued"
    if status == YES:
        msg = f"completely {kind}; rank {lat.rank}"
        if isinstance(cert, Node):
            msg += f"; root split E1={_one_based(cert.E1)} E2={_one_based(cert.E2)}"
        return Verdict(YES, cert, msg, characteristic)
    if status == NO:
        return Verdict(NO, None, f"not completely {kind} "
                       f"({search.partitions_tried} rank-compatible partitions examined)",
                       characteristic)
    return Verdict(NO_WITHIN_BOUND, None,
                   f"undecided: some p-gluing searches exhausted index {mode.p}^{mode.max_exp}",
                   characteristic)


def _one_based(idx) -> list:
    return [j + 1 for j in idx]


def ci_decide(lat: Lattice) -> Verdict:
    """Complete-intersection decision: is L completely glued?"""
    return _decide(lat, EXACT, 0)


def stci_decide(lat: Lattice, characteristic: int = 0, max_exp: int = DEFAULT_MAX_EXP) -> Verdict:
    """Set-theoretic complete intersection on binomials in the given characteristic."""
    if characteristic == 0:
        return ci_decide(lat)
    return _decide(lat, p_power(characteristic, max_exp), characteristic)


# -- certificates -----------------------------------------------------------------

def basis_from_certificate(cert: Certificate) -> list:
    """Glue vectors of the tree in pre-order (root first, then left, right)."""
    out = []
    stack = [cert]
    while stack:
        c = stack.pop()
        if isinstance(c, Leaf):
            continue
        if not isinstance(c, Node):
            raise MalformedCertificate(f"unexpected certificate element {c!r}")
        out.append(tuple(c.u))
        stack.append(c.right)
        stack.append(c.left)
    return out


def certificate_matrix(cert: Certificate, ambient_dim: int) -> IntMatrix:
    return IntMatrix(tuple(basis_from_certificate(cert)), ambient_dim)


def check_certificate(lat: Lattice, cert: Certificate, characteristic: int = 0) -> tuple:
    """``(ok, message)``; message names the first violated clause."""
    m = lat.ambient_dim
    try:
        problem = _structure_problem(cert, tuple(range(m)), m)
    except (TypeError, AttributeError, ValueError) as exc:
        problem = f"malformed certificate: {exc}"
    if problem:
        return False, problem
    vectors = basis_from_certificate(cert)
    for u in vectors:
        if u not in lat:
            return False, f"glue vector {list(u)} is not in the lattice"
    if len(vectors) != lat.rank:
        return False, f"certificate has {len(vectors)} glue vectors, lattice rank is {lat.rank}"
    if not is_mixed_dominating_fast(IntMatrix(tuple(vectors), m)):
        return False, "glue vectors do not form a mixed dominating matrix"
    span = Lattice.span(vectors, m)
    if span.rank != lat.rank:
        return False, "glue vectors are linearly dependent"
    if characteristic == 0:
        if span != lat:
            order = quotient_invariants(lat, span).order
            return False, f"span clause: glue vectors span a sublattice of index {order}, not 1"
        return True, "certificate verified (mixed dominating basis of L)"
    ok, k = index_p_power(lat, span, characteristic)
    if not ok:
        return False, f"span clause: index of the glue span is not a power of {characteristic}"
    return True, f"certificate verified (mixed dominating, index {characteristic}^{k} in L)"


def verify_certificate(lat: Lattice, cert: Certificate, characteristic: int = 0) -> bool:
    return check_certificate(lat, cert, characteristic)[0]


def _structure_problem(cert, coords: tuple, m: int) -> Optional[str]:
    if isinstance(cert, Leaf):
        if tuple(sorted(cert.coords)) != coords:
            return f"leaf covers {_one_based(cert.coords)}, expected {_one_based(coords)}"
        return None
    if not isinstance(cert, Node):
        return f"unexpected certificate element {cert!r}"
    E1, E2 = tuple(sorted(cert.E1)), tuple(sorted(cert.E2))
    if not E1 or not E2 or set(E1) & set(E2) or tuple(sorted(E1 + E2)) != coords:
        return f"node split {_one_based(E1)} | {_one_based(E2)} does not partition {_one_based(coords)}"
    u = cert.u
    if len(u) != m:
        return f"glue vector has length {len(u)}, expected {m}"
    if not any(u):
        return "glue vector is zero"
    inside = set(coords)
    if any(x for j, x in enumerate(u) if j not in inside):
        return f"glue vector {list(u)} leaves the coordinates {_one_based(coords)}"
    if any(u[j] < 0 for j in E1) or any(u[j] > 0 for j in E2):
        return f"sign pattern clause: {list(u)} is not >= 0 on E1 and <= 0 on E2"
    if not isinstance(cert.index_exponent, int) or cert.index_exponent < 0:
        return "index exponent must be a nonnegative integer"
    return (_structure_problem(cert.left, E1, m)
            or _structure_problem(cert.right, E2, m))
