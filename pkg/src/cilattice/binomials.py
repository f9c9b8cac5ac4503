"""Text rendering of lattice vectors as binomials x^{u+} - c x^{u-}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidCertificate, ZeroVector
from .gluing import Certificate, basis_from_certificate, check_certificate
from .linalg import Lattice, pos_neg_parts


def _monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def _coefficient(c) -> str:
    c = Fraction(c)
    if c.denominator == 1 and c > 0:
        return str(c.numerator)
    return f"({c})"


def emit_binomial(u: Sequence[int], c=None) -> str:
    """``"x1*x2^3 - x3^4"`` for u = (1, 3, -4, 0); ``c`` scales the second monomial."""
    if not any(u):
        raise ZeroVector("the zero vector has no binomial")
    plus, minus = pos_neg_parts(u)
    right = _monomial(minus)
    if c is not None and Fraction(c) != 1:
        if Fraction(c) == 0:
            raise ValueError("character values are nonzero")
        right = _coefficient(c) if right == "1" else f"{_coefficient(c)}*{right}"
    return f"{_monomial(plus)} - {right}"


@dataclass(frozen=True)
class CharacterAssignment:
    """Display-only nonzero rational per certificate basis vector."""

    values: tuple

    def __post_init__(self):
        if any(Fraction(v) == 0 for v in self.values):
            raise ValueError("character values must be nonzero")


@dataclass(frozen=True)
class BinomialPresentation:
    variables: tuple
    generators: tuple  # ((u, coefficient or None), ...)
    height: int
    note: str = ""

    def binomials(self) -> list:
        return [emit_binomial(u, c) for u, c in self.generators]

    def render(self) -> str:
        lines = [f"ring: K[{', '.join(self.variables)}]", f"height: {self.height}"]
        if self.generators:
            lines += [f"  {b}" for b in self.binomials()]
        else:
            lines.append("  (no generators: the lattice ideal is zero)")
        if self.note:
            lines.append(f"note: {self.note}")
        return "\n".join(lines)


def presentation_report(lat: Lattice, cert: Certificate, rho: Optional[CharacterAssignment] = None,
                        characteristic: int = 0) -> BinomialPresentation:
    ok, why = check_certificate(lat, cert, characteristic)
    if not ok:
        raise InvalidCertificate(why)
    basis = basis_from_certificate(cert)
    if rho is not None and len(rho.values) != len(basis):
        raise ValueError(f"need {len(basis)} character values, got {len(rho.values)}")
    coeffs = rho.values if rho is not None else (None,) * len(basis)
    note = ""
    if characteristic:
        note = f"up to radical, characteristic {characteristic}"
    variables = tuple(f"x{i}" for i in range(1, lat.ambient_dim + 1))
    return BinomialPresentation(variables, tuple(zip(basis, coeffs)), lat.rank, note)
