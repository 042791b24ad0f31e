"""Command-line surface: factorize, verify, search.  JSON in, JSON out.

Exit codes: 0 success; 1 verification failure (verify); 2 parse error or
unsupported search size; 3 extraction class unavailable for the ring;
4 hypothesis/precondition failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    CapabilityError,
    HypothesisError,
    IntegrityError,
    NotUnimodularError,
    ParseError,
    PreconditionError,
    RduError,
    UnsupportedSizeError,
)
from .factorizer import (
    ALL_CLASSES,
    extract_almost_commutative,
    extract_diag_difference,
    extract_offdiag,
    verify_factorization,
)
from .jsonio import (
    element_from_json,
    factorization_from_json,
    factorization_to_json,
    matrix_from_json,
    word_from_json,
)
from .matgroup import GLElement, invert_matrix
from .rings import CentralMultipleWitness, parse_ring

CLASS_ALMOST_COMMUTATIVE = "almost-commutative"


def _read_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON argument: {exc}") from exc


def _load_gl(args, ring, n) -> GLElement:
    mat = matrix_from_json(_read_json_arg(args.matrix), ring=ring, n=n)
    if args.inverse:
        inv = matrix_from_json(_read_json_arg(args.inverse), ring=ring, n=n)
        return GLElement(mat, inv)
    inv = invert_matrix(mat)
    if inv is None:
        raise HypothesisError("matrix is not invertible over its ring")
    return GLElement(mat, inv)


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_factorize(args) -> int:
    ring = parse_ring(args.ring)
    sigma = _load_gl(args, ring, args.n)
    a = element_from_json(ring, args.a)
    b = element_from_json(ring, args.b)
    if args.ring_class == CLASS_ALMOST_COMMUTATIVE:
        if not args.parts:
            raise ParseError("--class almost-commutative needs --parts")
        parts = []
        for item in _read_json_arg(args.parts):
            tau = word_from_json(ring, args.n, item["tau"], flag="Edoublestar")
            x = sigma.conjugated(tau).entry(1, 1)
            wit = CentralMultipleWitness(
                element_from_json(ring, item["z"]),
                element_from_json(ring, item["y"]),
                x,
            )
            parts.append((tau, wit))
        fact = extract_almost_commutative(sigma, parts, a, b, args.k, args.l)
    elif args.diag:
        c = element_from_json(ring, args.c)
        fact = extract_diag_difference(
            sigma, args.ring_class, args.i, args.j, args.k, args.l, a, b, c
        )
    else:
        source = args.source.replace("-", "_")
        fact = extract_offdiag(
            sigma, args.ring_class, args.i, args.j, args.k, args.l, a, b, source
        )
    report = verify_factorization(fact, sigma)
    if not report.passed:
        raise IntegrityError("emitted factorization failed verification")
    _emit(args, factorization_to_json(fact, human=args.human))
    return 0


def cmd_verify(args) -> int:
    ring = parse_ring(args.ring) if args.ring else None
    obj = _read_json_arg(args.factorization)
    if ring is None:
        if "ring" not in obj:
            raise ParseError("no ring given (use --ring or a factorization with one)")
        ring = parse_ring(obj["ring"])
    n = int(obj.get("n", args.n or 0)) or None
    sigma = _load_gl(args, ring, n)
    fact = factorization_from_json(obj, sigma)
    report = verify_factorization(fact, sigma)
    _emit(args, report.to_json())
    return 0 if report.passed else 1


def cmd_search(args) -> int:
    from .search import GroupTable, load_table, optimal_rdu_bound, save_table

    table = None
    if args.cache and os.path.exists(args.cache):
        table = load_table(args.cache)
        if (table.n, table.q) != (args.n, args.q):
            raise ParseError(
                f"cache holds (n={table.n}, q={table.q}), asked for "
                f"(n={args.n}, q={args.q})"
            )
    if table is None:
        table = GroupTable(args.n, args.q)
        if args.cache:
            save_table(table, args.cache)
    report = optimal_rdu_bound(args.n, args.q, jobs=args.jobs, table=table)
    _emit(args, report.to_json())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdu",
        description="Factorize transvections as bounded products of elementary "
        "conjugates, verify such factorizations, and search optimal bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factorize", help="produce a verified factorization")
    f.add_argument("--ring", required=True, help='ring spec, e.g. "Z/12"')
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--matrix", required=True, help="matrix JSON or @file")
    f.add_argument("--inverse", help="inverse matrix JSON or @file")
    f.add_argument(
        "--class",
        dest="ring_class",
        required=True,
        choices=list(ALL_CLASSES) + [CLASS_ALMOST_COMMUTATIVE],
    )
    f.add_argument("--i", type=int, default=1)
    f.add_argument("--j", type=int, default=2)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--l", type=int, required=True)
    f.add_argument("--a", default="1", help="left multiplier (element literal)")
    f.add_argument("--b", default="1", help="right multiplier (element literal)")
    f.add_argument("--c", default="1", help="diagonal-difference twist element")
    f.add_argument("--diag", action="store_true", help="extract c*s_ii - s_jj*c")
    f.add_argument(
        "--source",
        default="sigma",
        choices=["sigma", "sigma-inverse", "sigma_inverse"],
        help="whose (i, j) entry to extract",
    )
    f.add_argument("--parts", help="partition JSON for --class almost-commutative")
    f.add_argument("--human", action="store_true")
    f.add_argument("--out")
    f.set_defaults(func=cmd_factorize)

    v = sub.add_parser("verify", help="re-check a factorization JSON")
    v.add_argument("--factorization", required=True, help="JSON or @file")
    v.add_argument("--matrix", required=True, help="sigma JSON or @file")
    v.add_argument("--inverse")
    v.add_argument("--ring")
    v.add_argument("--n", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exhaustive optimal-bound certification")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("RDU_JOBS", "1")),
        help="worker processes (default: RDU_JOBS or 1)",
    )
    s.add_argument("--cache", help="group-table cache file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, UnsupportedSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapabilityError as exc:
        print(f"class unavailable: {exc}", file=sys.stderr)
        return 3
    except (HypothesisError, PreconditionError, NotUnimodularError) as exc:
        print(f"hypothesis failed: {exc}", file=sys.stderr)
        return 4
    except (IntegrityError, RduError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
