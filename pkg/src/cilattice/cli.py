"""Command-line front end.

Exit status: 0 when a decision was reached (yes or no), 2 on bad input,
3 when a p-gluing search ran out of its exponent bound.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import formats
from .binomials import presentation_report
from .corpus import generate_instance
from .errors import LatticeError, NotPositive
from .gluing import (
    DEFAULT_MAX_EXP,
    NO_WITHIN_BOUND,
    Leaf,
    basis_from_certificate,
    check_certificate,
    stci_decide,
)
from .linalg import IntMatrix, Lattice
from .mixed import find_square_mixed_submatrix, fms_tree, is_mixed
from .semigroups import SemigroupPresentation, associated_semigroup, cone_report, kernel_lattice

EXIT_OK, EXIT_INPUT, EXIT_BOUND = 0, 2, 3


class UsageError(Exception):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def _characteristic(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if p != 0 and not _is_prime(p):
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or a prime, got {p}")
    return p


def _as_lattice(inst) -> Lattice:
    return kernel_lattice(inst) if isinstance(inst, SemigroupPresentation) else inst


def _one(idx) -> str:
    return "{" + ", ".join(str(j + 1) for j in idx) + "}"


def _tree_lines(node, depth: int = 0) -> list:
    pad = "  " * depth
    if node is None:
        return []
    lines = [f"{pad}q={node['q'] + 1}  E1={_one(node['E1'])}  E2={_one(node['E2'])}"
             f"  S1={_one(node['S1'])}  S2={_one(node['S2'])}"]
    return lines + _tree_lines(node["left"], depth + 1) + _tree_lines(node["right"], depth + 1)


def _certificate_lines(cert, depth: int = 0) -> list:
    pad = "  " * depth
    if isinstance(cert, Leaf):
        return [f"{pad}leaf {_one(cert.coords)}"]
    lines = [f"{pad}glue {_one(cert.E1)} | {_one(cert.E2)}  u={list(cert.u)}"
             f"  index exponent {cert.index_exponent}"]
    return lines + _certificate_lines(cert.left, depth + 1) + _certificate_lines(cert.right, depth + 1)


def _matrix_lines(rows) -> list:
    if not rows:
        return ["  (empty)"]
    width = max(len(str(x)) for r in rows for x in r)
    return ["  [" + " ".join(str(x).rjust(width) for x in r) + "]" for r in rows]


# -- subcommands ------------------------------------------------------------------

def cmd_check_mixed_dominating(args, out) -> int:
    m: IntMatrix = formats.parse_matrix(formats.read_json(args.matrix))
    if m.nrows == 0:
        print("mixed dominating: true (empty)", file=out)
        return EXIT_OK
    if not is_mixed(m):
        bad = next(i for i, r in enumerate(m.rows) if not (any(x > 0 for x in r) and any(x < 0 for x in r)))
        print("mixed: false", file=out)
        print(f"row {bad + 1} lacks a positive or a negative entry", file=out)
        return EXIT_OK
    sub = find_square_mixed_submatrix(m)
    if sub is not None:
        rows, cols = sub
        print("mixed dominating: false", file=out)
        print(f"square mixed submatrix: rows {_one(rows)}, columns {_one(cols)}", file=out)
        return EXIT_OK
    print("mixed dominating: true", file=out)
    print("decomposition tree (1-based):", file=out)
    for line in _tree_lines(fms_tree(m), 1):
        print(line, file=out)
    return EXIT_OK


def cmd_decide(args, out) -> int:
    lat = _as_lattice(formats.read_instance(args.instance))
    verdict = stci_decide(lat, args.char, args.max_exp)
    if args.format == "machine":
        out.write(formats.dumps(formats.verdict_to_json(verdict, lat.ambient_dim)))
        return EXIT_BOUND if verdict.outcome == NO_WITHIN_BOUND else EXIT_OK
    kind = "complete intersection" if args.char == 0 else \
        f"set-theoretic complete intersection on binomials, characteristic {args.char}"
    print(f"lattice: rank {lat.rank} in Z^{lat.ambient_dim}", file=out)
    print(f"question: {kind}", file=out)
    print(f"verdict: {verdict.outcome}", file=out)
    print(f"details: {verdict.diagnostics}", file=out)
    if verdict.yes:
        basis = basis_from_certificate(verdict.certificate)
        print("certificate:", file=out)
        for line in _certificate_lines(verdict.certificate, 1):
            print(line, file=out)
        print("certificate basis (mixed dominating matrix):", file=out)
        for line in _matrix_lines(basis):
            print(line, file=out)
        report = presentation_report(lat, verdict.certificate, characteristic=args.char)
        print("binomial presentation:", file=out)
        for line in report.render().splitlines():
            print("  " + line, file=out)
    return EXIT_BOUND if verdict.outcome == NO_WITHIN_BOUND else EXIT_OK


def cmd_verify(args, out) -> int:
    lat = _as_lattice(formats.read_instance(args.instance))
    cert = formats.parse_certificate_file(formats.read_json(args.certificate))
    if cert.ambient_dim != lat.ambient_dim:
        raise UsageError(f"certificate is for Z^{cert.ambient_dim}, instance lives in Z^{lat.ambient_dim}")
    ok, why = check_certificate(lat, cert.root, cert.characteristic)
    print(f"{'pass' if ok else 'fail'}: {why}", file=out)
    return EXIT_OK


def cmd_cone(args, out) -> int:
    inst = formats.read_instance(args.instance)
    if isinstance(inst, Lattice):
        inst = associated_semigroup(inst)
    rep = cone_report(inst)
    print("projected generators:", file=out)
    for i, v in enumerate(inst.projected(), start=1):
        print(f"  a{i} = {list(v)}", file=out)
    print(f"dimension: {rep.dimension}", file=out)
    print(f"extreme rays: {', '.join(f'a{i + 1}' for i in rep.rays) or '(none)'}", file=out)
    print(f"count: {rep.count}", file=out)
    if rep.bound_2n_minus_2 is None:
        print("bound 2n-2: not applicable (dimension < 2)", file=out)
    else:
        print(f"bound 2n-2: {str(rep.bound_2n_minus_2).lower()} "
              f"({rep.count} <= {2 * rep.dimension - 2})", file=out)
    return EXIT_OK


def cmd_generate(args, out) -> int:
    try:
        lat, expected = generate_instance(args.seed, args.rank, args.cols, args.char, args.perturb_exp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    instance = formats.instance_to_json(lat)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, obj in (("instance.json", instance), ("expected.json", expected)):
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
                fh.write(formats.dumps(obj))
        print(f"wrote {args.out}/instance.json and {args.out}/expected.json", file=out)
    else:
        out.write(formats.dumps({"instance": instance, "expected": expected}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cilattice",
        description="Decide complete-intersection status of positive lattices and semigroups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-mixed-dominating", help="test a matrix for mixed dominance")
    p.add_argument("matrix", help="JSON matrix file")
    p.set_defaults(func=cmd_check_mixed_dominating)

    p = sub.add_parser("decide", help="decide CI (char 0) or binomial STCI (char p)")
    p.add_argument("instance", help="JSON instance file")
    p.add_argument("--char", type=_characteristic, default=0, help="0 or a prime (default 0)")
    p.add_argument("--max-exp", type=int, default=DEFAULT_MAX_EXP,
                   help=f"largest p-exponent tried for a glue class (default {DEFAULT_MAX_EXP})")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="re-check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cone", help="extreme rays of the semigroup cone")
    p.add_argument("instance")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("generate", help="write a seeded random instance and its expected verdicts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--char", type=_characteristic, default=0)
    p.add_argument("--perturb-exp", type=int, default=0)
    p.add_argument("--out", help="directory for instance.json and expected.json (default: stdout)")
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "max_exp", 0) < 0:
        print("error: --max-exp must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except NotPositive as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness in L ∩ N^m: {list(exc.witness)}", file=sys.stderr)
        return EXIT_INPUT
    except (LatticeError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
