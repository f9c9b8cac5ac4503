"""Seeded instance generator for the test corpus and ``cilattice generate``."""

from __future__ import annotations

import random
from typing import Optional

from .gluing import ci_decide, stci_decide
from .linalg import Lattice, identity, matmul
from .mixed import random_mixed_dominating


def random_unimodular(rng: random.Random, n: int, steps: Optional[int] = None) -> list:
    """Product of a few elementary row operations and sign flips."""
    u = identity(n)
    if n == 0:
        return u
    for _ in range(steps if steps is not None else 2 * n):
        i = rng.randrange(n)
        if n > 1 and rng.random() < 0.8:
            j = rng.choice([k for k in range(n) if k != i])
            c = rng.choice((-2, -1, 1, 2))
            u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        else:
            u[i] = [-a for a in u[i]]
    return u


def random_index_matrix(rng: random.Random, n: int, p: int, a: int) -> list:
    """Random n x n integer matrix with determinant ±p^a (n >= 1)."""
    d = identity(n)
    d[0][0] = p ** a
    return matmul(matmul(random_unimodular(rng, n), d), random_unimodular(rng, n))


def generate_instance(seed: int, rank: int, cols: int, char: int = 0,
                      perturb_exp: int = 0) -> tuple:
    """``(lattice, expected)`` for one seed.

    The lattice is spanned by a random mixed dominating matrix, so it is a
    complete intersection.  With ``perturb_exp = a > 0`` the basis is
    replaced by ``T @ basis`` where ``det T = ±char^a``; that sublattice has
    index char^a and stays a set-theoretic complete intersection in
    characteristic ``char``, while its CI status is recorded as computed.
    """
    if rank < 0 or cols < rank:
        raise ValueError("need 0 <= rank <= cols")
    if rank and cols < rank + 1:
        raise ValueError(f"a positive lattice of rank {rank} needs at least {rank + 1} coordinates")
    if perturb_exp and not char:
        raise ValueError("--perturb-exp needs a prime --char")
    rng = random.Random(seed)
    md = random_mixed_dominating(rng, rank, cols, max_entry=3)
    rows = [list(r) for r in md.rows]
    index = 1
    if perturb_exp and rank:
        rows = matmul(random_index_matrix(rng, rank, char, perturb_exp), rows)
        index = char ** perturb_exp
    lat = Lattice.span(rows, cols)
    expected = {
        "seed": seed,
        "rank": rank,
        "cols": cols,
        "index_in_glued_lattice": index,
        "mixed_dominating_basis": [list(r) for r in md.rows],
        "ci": ci_decide(lat).outcome,
    }
    if char:
        expected["stci"] = {str(char): "yes"}
        expected["stci_computed"] = {str(char): stci_decide(lat, char).outcome}
    return lat, expected
