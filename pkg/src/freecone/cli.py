"""Command-line interface.

Every subcommand reads UTF-8 JSON documents (a path, or `-` for stdin),
writes one canonical JSON document to stdout, and reports problems on
stderr.  Exit codes: 0 success, 1 invalid input, 2 compared objects are
unequal (or a certification leg failed), 3 a size bound was exceeded,
4 internal inconsistency (an oracle cross-check failed).
"""

from __future__ import annotations

import argparse
import sys

from .cone import VariantKind, free_m_cone, higgs_lift, variant
from .documents import (
    canonical_json,
    catenary_to_document,
    characteristic_to_document,
    configuration_from_document,
    configuration_to_document,
    g_to_document,
    matroid_from_document,
    matroid_to_document,
    parse_json,
    report_to_document,
    src_to_document,
    tutte_to_document,
)
from .errors import GroundSetTooLarge, MatroidError, NotABasisSystem, ParseError
from .invariants import (
    DEFAULT_MAX_PERMS,
    DEFAULT_MAX_SUBSETS,
    catenary_data,
    characteristic,
    g_invariant,
    src_data,
    tutte,
)
from .transfer import (
    catenary_of_cone,
    certify_pair,
    reconstruct_from_cone_config,
    tutte_of_cone_from_src,
)
from .zlattice import ValidationReport, configuration, validate_axioms

__all__ = ["main", "entry"]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_matroid(path: str, validate: bool = True):
    return matroid_from_document(parse_json(_read_text(path)), validate=validate)


def _emit(doc) -> None:
    sys.stdout.write(canonical_json(doc))


def _kind(args) -> VariantKind:
    return VariantKind.coerce(args.variant)


def _cone_matroid(args):
    M = _load_matroid(args.file)
    Q = free_m_cone(M, args.m)
    kind = _kind(args)
    return Q if kind is VariantKind.FULL else variant(Q, kind)


def cmd_validate(args) -> int:
    doc = parse_json(_read_text(args.file))
    if isinstance(doc, dict) and "bases" in doc and "cyclic_flats" not in doc:
        try:
            matroid_from_document(doc)
            report = ValidationReport(ok=True)
            names = None
        except NotABasisSystem as exc:
            report = ValidationReport(
                ok=False, axiom="basis-exchange", witness=(), message=str(exc)
            )
            names = None
    else:
        M = matroid_from_document(doc, validate=False)
        report = validate_axioms(M.zf)
        names = M.names
    _emit(report_to_document(report, names=names))
    return 0 if report.ok else 1


def cmd_cone(args) -> int:
    _emit(matroid_to_document(_cone_matroid(args)))
    return 0


def _invariant_document(M, kind: str, args):
    if kind == "g":
        return g_to_document(g_invariant(M, max_perms=args.max_perms, threads=args.threads))
    if kind == "catenary":
        return catenary_to_document(catenary_data(M))
    if kind == "tutte":
        return tutte_to_document(tutte(M, max_subsets=args.max_subsets))
    if kind == "characteristic":
        return characteristic_to_document(characteristic(M, max_subsets=args.max_subsets))
    if kind == "src":
        return src_to_document(src_data(M, max_subsets=args.max_subsets))
    if kind == "config":
        return configuration_to_document(configuration(M))
    raise AssertionError(kind)


def cmd_invariant(args) -> int:
    _emit(_invariant_document(_load_matroid(args.file), args.kind, args))
    return 0


def cmd_transfer(args) -> int:
    M = _load_matroid(args.file)
    kind = _kind(args)
    if args.what == "catenary":
        out = catenary_of_cone(catenary_data(M), args.m, kind)
        _emit(catenary_to_document(out))
    else:
        out = tutte_of_cone_from_src(src_data(M, max_subsets=args.max_subsets), args.m, kind)
        _emit(tutte_to_document(out))
    return 0


def cmd_reconstruct(args) -> int:
    cfg = configuration_from_document(parse_json(_read_text(args.file)))
    M = reconstruct_from_cone_config(cfg, _kind(args), args.m)
    _emit(matroid_to_document(M))
    return 0


def cmd_compare(args) -> int:
    A = _load_matroid(args.file_a)
    B = _load_matroid(args.file_b)
    if args.kind == "config":
        ca, cb = configuration(A), configuration(B)
        equal = ca == cb
        first = None
        if not equal:
            first = "node-count" if len(ca) != len(cb) else "certificate"
    else:
        da = _invariant_document(A, args.kind, args)
        db = _invariant_document(B, args.kind, args)
        equal = da == db
        first = None
        if not equal:
            if args.kind == "tutte":
                ta, tb = da["coeffs"], db["coeffs"]
                pairs = [
                    (i, j)
                    for i in range(max(len(ta), len(tb)))
                    for j in range(max(len(ta[0]) if ta else 0, len(tb[0]) if tb else 0))
                ]
                for i, j in sorted(pairs):
                    va = ta[i][j] if i < len(ta) and j < len(ta[i]) else 0
                    vb = tb[i][j] if i < len(tb) and j < len(tb[i]) else 0
                    if va != vb:
                        first = f"{i},{j}"
                        break
            else:
                ka, kb = da.get("counts", {}), db.get("counts", {})
                for key in sorted(set(ka) | set(kb)):
                    if ka.get(key, 0) != kb.get(key, 0):
                        first = key
                        break
                if first is None:
                    first = next(
                        (k for k in sorted(set(da) | set(db)) if da.get(k) != db.get(k)),
                        "document",
                    )
    out = {"kind": args.kind, "equal": equal}
    if first is not None:
        out["first_difference"] = first
    _emit(out)
    return 0 if equal else 2


def cmd_certify_pair(args) -> int:
    M = _load_matroid(args.file_a)
    N = _load_matroid(args.file_b)
    report = certify_pair(M, N, args.m)
    _emit(
        {
            "m": report.m,
            "legs": report.legs,
            "oracle_ok": report.oracle_ok,
            "all_passed": report.all_passed,
        }
    )
    if not report.oracle_ok:
        return 4
    return 0 if report.all_passed else 2


def cmd_higgs(args) -> int:
    M = _load_matroid(args.file)
    _emit(matroid_to_document(higgs_lift(M)))
    return 0


_VARIANTS = ["full", "tipless", "baseless", "tipless-baseless"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-subsets",
        type=int,
        default=DEFAULT_MAX_SUBSETS,
        help="largest subset enumeration allowed (default 2^25)",
    )
    common.add_argument(
        "--max-perms",
        type=int,
        default=DEFAULT_MAX_PERMS,
        help="largest permutation enumeration allowed (default 10!)",
    )
    common.add_argument(
        "--threads", type=int, default=1, help="worker processes for heavy counts"
    )

    parser = argparse.ArgumentParser(
        prog="freecone",
        description="Exact matroid computations around the free multiple cone.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the lattice axioms")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("cone", parents=[common], help="build a free multiple cone")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--variant", choices=_VARIANTS, default="full")
    p.add_argument("file")
    p.set_defaults(fn=cmd_cone)

    p = sub.add_parser("invariant", parents=[common], help="compute an invariant")
    p.add_argument(
        "--kind",
        required=True,
        choices=["g", "catenary", "tutte", "characteristic", "src", "config"],
    )
    p.add_argument("file")
    p.set_defaults(fn=cmd_invariant)

    p = sub.add_parser(
        "transfer",
        parents=[common],
        help="cone invariant from source data alone, no cone built",
    )
    p.add_argument("--what", required=True, choices=["catenary", "tutte"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--variant", choices=_VARIANTS, default="full")
    p.add_argument("file")
    p.set_defaults(fn=cmd_transfer)

    p = sub.add_parser(
        "reconstruct",
        parents=[common],
        help="recover the source matroid from a cone configuration",
    )
    p.add_argument("--variant", choices=_VARIANTS, default="full")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("compare", parents=[common], help="compare an invariant of two matroids")
    p.add_argument(
        "--kind", required=True, choices=["g", "catenary", "tutte", "src", "config"]
    )
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser(
        "certify-pair",
        parents=[common],
        help="certify equal invariants and different cone configurations",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(fn=cmd_certify_pair)

    p = sub.add_parser("higgs", parents=[common], help="free one-step rank lift")
    p.add_argument("file")
    p.set_defaults(fn=cmd_higgs)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        where = f" (line {exc.line}, column {exc.column})" if exc.line else ""
        print(f"freecone: parse error{where}: {exc}", file=sys.stderr)
        return 1
    except GroundSetTooLarge as exc:
        print(f"freecone: size bound exceeded: {exc}", file=sys.stderr)
        return 3
    except MatroidError as exc:
        print(f"freecone: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
