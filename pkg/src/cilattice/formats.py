"""JSON instance, matrix and certificate files.

Instance files::

    {"kind": "lattice", "ambient_dim": 4, "generators": [[1, 3, -4, 0], [3, 1, 0, -4]]}
    {"kind": "semigroup", "free_rank": 2, "torsion_orders": [4],
     "generators": [{"free": [4, 0], "torsion": [0]}, ...]}

Matrix files are either a bare list of rows or ``{"rows": [...], "ncols": d}``
(the object form is needed for empty matrices of nonzero width).

Certificate files hold a header and a tree of 1-based nodes::

    {"characteristic": 0, "ambient_dim": 4,
     "root": {"E1": [1, 2, 3], "E2": [4], "u": [3, 1, 0, -4], "index_exponent": 0,
              "children": [<node or leaf>, <node or leaf>]}}

A leaf is ``{"coords": [...]}``.  All integers are plain JSON decimals of
any size; floats and booleans are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .errors import InputError, MalformedCertificate
from .gluing import Certificate, Leaf, Node, Verdict
from .linalg import IntMatrix, Lattice
from .semigroups import SemigroupPresentation

Instance = Union[Lattice, SemigroupPresentation]


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what}: expected an integer, got {x!r}")
    return x


def _ints(xs, what: str) -> list:
    if not isinstance(xs, list):
        raise InputError(f"{what}: expected a list of integers, got {xs!r}")
    return [_int(x, what) for x in xs]


def _rows(rows, width: Optional[int], what: str) -> list:
    if not isinstance(rows, list):
        raise InputError(f"{what}: expected a list of rows")
    out = [_ints(r, what) for r in rows]
    if width is None:
        width = len(out[0]) if out else 0
    for r in out:
        if len(r) != width:
            raise InputError(f"{what}: row {r} has length {len(r)}, expected {width}")
    return out


def _field(obj: dict, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{what}: missing field {key!r}")
    return obj[key]


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- matrices ---------------------------------------------------------------------

def parse_matrix(obj) -> IntMatrix:
    if isinstance(obj, list):
        rows = _rows(obj, None, "matrix")
        return IntMatrix(tuple(map(tuple, rows)), len(rows[0]) if rows else 0)
    ncols = _int(_field(obj, "ncols", "matrix"), "matrix ncols")
    if ncols < 0:
        raise InputError("matrix ncols must be nonnegative")
    rows = _rows(_field(obj, "rows", "matrix"), ncols, "matrix")
    return IntMatrix(tuple(map(tuple, rows)), ncols)


def matrix_to_json(m: IntMatrix) -> dict:
    return {"rows": [list(r) for r in m.rows], "ncols": m.ncols}


# -- instances --------------------------------------------------------------------

def parse_instance(obj) -> Instance:
    kind = _field(obj, "kind", "instance")
    if kind == "lattice":
        dim = _int(_field(obj, "ambient_dim", "instance"), "ambient_dim")
        if dim < 0:
            raise InputError("ambient_dim must be nonnegative")
        rows = _rows(_field(obj, "generators", "instance"), dim, "lattice generators")
        return Lattice.span(rows, dim)
    if kind == "semigroup":
        n = _int(_field(obj, "free_rank", "instance"), "free_rank")
        orders = _ints(obj.get("torsion_orders", []), "torsion_orders")
        gens = []
        for g in _field(obj, "generators", "instance"):
            free = _ints(_field(g, "free", "semigroup generator"), "free part")
            tors = _ints(g.get("torsion", []), "torsion part")
            gens.append((free, tors))
        return SemigroupPresentation.create(n, orders, gens)
    raise InputError(f"unknown instance kind {kind!r} (expected 'lattice' or 'semigroup')")


def instance_to_json(inst: Instance) -> dict:
    if isinstance(inst, Lattice):
        return {"kind": "lattice", "ambient_dim": inst.ambient_dim,
                "generators": [list(b) for b in inst.basis]}
    return {
        "kind": "semigroup",
        "free_rank": inst.free_rank,
        "torsion_orders": list(inst.torsion_orders),
        "generators": [{"free": list(f), "torsion": list(t)} for f, t in inst.generators],
    }


def read_instance(path: str) -> Instance:
    return parse_instance(read_json(path))


# -- certificates -----------------------------------------------------------------

@dataclass(frozen=True)
class CertificateFile:
    characteristic: int
    ambient_dim: int
    root: Certificate


def _one_based(idx) -> list:
    return [j + 1 for j in idx]


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, Leaf):
        return {"coords": _one_based(cert.coords)}
    return {
        "E1": _one_based(cert.E1),
        "E2": _one_based(cert.E2),
        "u": list(cert.u),
        "index_exponent": cert.index_exponent,
        "children": [certificate_to_json(cert.left), certificate_to_json(cert.right)],
    }


def _zero_based(xs, m: int, what: str) -> tuple:
    try:
        idx = _ints(xs, what)
    except InputError as exc:
        raise MalformedCertificate(str(exc)) from None
    if any(not 1 <= j <= m for j in idx):
        raise MalformedCertificate(f"{what}: indices must lie in 1..{m}, got {idx}")
    return tuple(j - 1 for j in idx)


def parse_certificate(obj, m: int) -> Certificate:
    if not isinstance(obj, dict):
        raise MalformedCertificate(f"certificate node must be an object, got {obj!r}")
    if "coords" in obj:
        return Leaf(_zero_based(obj["coords"], m, "leaf coords"))
    try:
        children = obj["children"]
        u = tuple(_ints(obj["u"], "u"))
        exp = _int(obj.get("index_exponent", 0), "index_exponent")
        E1, E2 = obj["E1"], obj["E2"]
    except KeyError as exc:
        raise MalformedCertificate(f"certificate node lacks {exc.args[0]!r}") from None
    except InputError as exc:
        raise MalformedCertificate(str(exc)) from None
    if not isinstance(children, list) or len(children) != 2:
        raise MalformedCertificate("a node needs exactly two children")
    return Node(_zero_based(E1, m, "E1"), _zero_based(E2, m, "E2"), u, exp,
                parse_certificate(children[0], m), parse_certificate(children[1], m))


def parse_certificate_file(obj) -> CertificateFile:
    try:
        char = _int(_field(obj, "characteristic", "certificate"), "characteristic")
        m = _int(_field(obj, "ambient_dim", "certificate"), "ambient_dim")
        root = _field(obj, "root", "certificate")
    except InputError as exc:
        raise MalformedCertificate(str(exc)) from None
    if root is None:
        raise MalformedCertificate("certificate file has no root (was the verdict 'no'?)")
    return CertificateFile(char, m, parse_certificate(root, m))


def verdict_to_json(v: Verdict, ambient_dim: int) -> dict:
    """Machine-readable decision record; a CertificateFile when the verdict is yes."""
    return {
        "verdict": v.outcome,
        "characteristic": v.characteristic,
        "ambient_dim": ambient_dim,
        "diagnostics": v.diagnostics,
        "root": certificate_to_json(v.certificate) if v.certificate is not None else None,
    }
