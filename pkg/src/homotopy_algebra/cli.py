"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage, input or cap errors.
"""

from __future__ import annotations

import argparse
import sys

from . import docformat
from .halg import check_algebra
from .operad import (
    ainf_generator_diff, arity_homology, check_d_squared, family_operad, is_minimal,
    linf_generator_diff,
)
from .report import CheckRecord, Report
from .transfer import DEFAULT_MAX_ARITY, TransferError, TransferProblem, transfer, verify_transfer
from .trees import inline, pretty

CAPS = {"ainf": 6, "linf": 5}
HOMOLOGY_CAP = 5


class CapError(Exception):
    pass


def _enforce_cap(value: int, cap: int, what: str, override: int | None):
    limit = cap if override is None else override
    if value > limit:
        raise CapError(f"refusing {what} {value}: above the cap of {limit} (raise it with --cap)")


def _emit(report: Report, fmt: str, summary: str | None = None):
    print(report.machine() if fmt == "machine" else report.text())
    if summary and fmt == "text":
        print(summary)


def cmd_check_dsq(args) -> int:
    _enforce_cap(args.max_arity, CAPS[args.family], f"{args.family} arity", args.cap)
    report = check_d_squared(family_operad(args.family, args.max_arity), args.max_arity)
    residual = sum(r.residual_terms for r in report.records)
    _emit(report, args.format,
          f"{args.family}: {len(report.records)} generators (arities 2..{args.max_arity}), "
          f"residual {residual}")
    return 0 if report.passed else 1


def cmd_diff_table(args) -> int:
    _enforce_cap(args.arity, CAPS[args.family], f"{args.family} arity", args.cap)
    if args.arity < 2:
        raise CapError("arity must be at least 2")
    x = ainf_generator_diff(args.arity) if args.family == "ainf" else linf_generator_diff(args.arity)
    name = "m" if args.family == "ainf" else "l"
    if args.format == "machine":
        for tree, c in x.items():
            print(f"{c}\t{inline(tree)}")
        return 0
    print(f"d {name}{args.arity} = {len(x)} terms")
    for tree, c in x.items():
        sgn = "+" if c > 0 else "-"
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        print(f"\n{sgn} {mag}{inline(tree)}")
        print(pretty(tree))
    return 0


def cmd_check_algebra(args) -> int:
    doc = docformat.load(args.file)
    A = doc.to_algebra(args.max_arity)
    _enforce_cap(A.max_arity, CAPS[doc.kind], f"{doc.kind} arity", args.cap)
    report = check_algebra(A)
    verdict = "passes" if report.passed else "fails"
    _emit(report, args.format, f"{doc.kind} algebra {verdict} to order {A.max_arity}")
    return 0 if report.passed else 1


def cmd_transfer(args) -> int:
    doc = docformat.load(args.file)
    if doc.kind != "ainf":
        raise CapError("transfer needs an ainf document")
    top = args.max_arity or DEFAULT_MAX_ARITY
    _enforce_cap(top, CAPS["ainf"], "transfer arity", args.cap)
    A = doc.to_algebra(top)
    try:
        result = transfer(TransferProblem(A, None, top))
    except TransferError as exc:
        print(f"transfer refused: {exc}", file=sys.stderr)
        return 1
    report = verify_transfer(result)
    if args.out:
        docformat.dump(docformat.AlgebraDocument.from_algebra(result.transferred, result.morphism),
                       args.out)
    homology = ", ".join(f"{n}:{d}" for n, d in result.contraction.homology.basis)
    _emit(report, args.format, f"homology [{homology}]; verified to order {top}")
    return 0 if report.passed else 1


def cmd_homology(args) -> int:
    _enforce_cap(args.arity, HOMOLOGY_CAP, "homology arity", args.cap)
    op = family_operad(args.family, max(args.arity, 2))
    table = arity_homology(op, args.arity, cap=max(args.arity, HOMOLOGY_CAP))
    for degree, betti in table:
        if args.format == "machine":
            print(f"homology\t{args.arity}\t{degree}\t{betti}")
        else:
            print(f"arity {args.arity} degree {degree}: {betti}")
    return 0


def cmd_minimality(args) -> int:
    _enforce_cap(args.max_arity, CAPS[args.family], f"{args.family} arity", args.cap)
    ok = is_minimal(family_operad(args.family, args.max_arity))
    report = Report([CheckRecord("minimal", args.max_arity, ok, 0 if ok else 1)])
    _emit(report, args.format,
          f"{args.family}: differential is {'decomposable' if ok else 'not decomposable'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homotopy-algebra",
                                     description="Exact checks for A(inf)/L(inf) operads and algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "machine"], default="text")
        p.add_argument("--cap", type=int, default=None, help="override the arity cap")
        return p

    p = common(sub.add_parser("check-dsq", help="verify d∘d = 0 on the generators"))
    p.add_argument("--family", choices=["ainf", "linf"], required=True)
    p.add_argument("--max-arity", type=int, required=True)
    p.set_defaults(func=cmd_check_dsq)

    p = common(sub.add_parser("diff-table", help="print the differential of a generator"))
    p.add_argument("--family", choices=["ainf", "linf"], required=True)
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_diff_table)

    p = common(sub.add_parser("check-algebra", help="check an algebra document"))
    p.add_argument("file")
    p.add_argument("--max-arity", type=int, default=None)
    p.set_defaults(func=cmd_check_algebra)

    p = common(sub.add_parser("transfer", help="transfer an A(inf) structure to homology"))
    p.add_argument("file")
    p.add_argument("--max-arity", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_transfer)

    p = common(sub.add_parser("homology", help="Betti numbers of one arity of the operad"))
    p.add_argument("--family", choices=["ainf", "linf"], required=True)
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_homology)

    p = common(sub.add_parser("minimality", help="is the generator differential decomposable"))
    p.add_argument("--family", choices=["ainf", "linf"], required=True)
    p.add_argument("--max-arity", type=int, required=True)
    p.set_defaults(func=cmd_minimality)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapError, docformat.DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
