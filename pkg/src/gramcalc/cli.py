"""Command-line front end.

Subcommands: family, check, oracle, label, series, trees, errata.
Exit codes: 0 success / all checks pass, 1 identity or diff failure,
2 usage or input error.  All output is deterministic for fixed inputs;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import structures
from .errata import ERRATA
from .errors import GramcalcError
from .families import (
    FAMILY_NAMES,
    family_poly,
)
from .identities import (
    DEFAULT_MAX_N,
    DEFAULT_ORACLE_MAX_N,
    run_all,
    run_identity,
)
from .laurent import LaurentPoly
from .series import (
    CLOSED_FORM_NAMES,
    ELEMENTARY_NAMES,
    RadicalPoint,
    TruncSeries,
    closed_form_series,
    elementary_series,
)


def _parse_assignments(items) -> dict:
    """Parse repeated/comma-joined var=rational assignments."""
    values = {}
    for item in items or ():
        for piece in item.split(","):
            piece = piece.strip()
            if not piece:
                continue
            if "=" not in piece:
                raise ValueError(f"expected var=rational, got {piece!r}")
            var, _, raw = piece.partition("=")
            values[var.strip()] = Fraction(raw.strip())
    return values


def _emit_poly(poly: LaurentPoly, fmt: str):
    if fmt == "json":
        print(json.dumps(poly.to_json()))
    elif fmt == "csv":
        print("monomial,coefficient")
        for exps, coeff in poly.sorted_terms():
            monomial = LaurentPoly(poly.vars, {exps: 1}).render()
            print(f"{monomial},{coeff}")
        if poly.is_zero():
            print("0,0")
    else:
        print(poly.render())


def cmd_family(args) -> int:
    poly = family_poly(args.name, args.n)
    _emit_poly(poly, args.format)
    return 0


def _report_line(report) -> str:
    base = f"{report.status:4s} {report.name} [n={report.lo}..{report.hi}] ({report.millis} ms)"
    if report.witness:
        base += f" witness={json.dumps(report.witness)}"
    return base


def cmd_check(args) -> int:
    points = _parse_assignments(args.points)
    if args.name == "all":
        reports = run_all(
            max_n=args.max_n, points=points, oracle_max_n=args.oracle_max_n
        )
    else:
        reports = [
            run_identity(
                args.name,
                max_n=args.max_n,
                points=points,
                oracle_max_n=args.oracle_max_n,
            )
        ]
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for report in reports:
            print(_report_line(report))
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} identities pass")
    return 0 if all(r.passed for r in reports) else 1


def _warn_bound(bound):
    if bound is not None and bound > structures.DEFAULT_ENUM_BOUND:
        print(f"warning: enumeration bound raised to {bound}", file=sys.stderr)


def cmd_oracle(args) -> int:
    _warn_bound(args.bound)
    oracle = structures.family_poly_oracle(args.name, args.n, bound=args.bound)
    if not args.diff:
        _emit_poly(oracle, args.format)
        return 0
    grammar_side = family_poly(args.name, args.n)
    equal = oracle == grammar_side
    if args.format == "json":
        print(
            json.dumps(
                {
                    "family": args.name,
                    "n": args.n,
                    "grammar": grammar_side.to_json(),
                    "oracle": oracle.to_json(),
                    "equal": equal,
                }
            )
        )
    else:
        print(f"grammar: {grammar_side.render()}")
        print(f"oracle:  {oracle.render()}")
        print("equal" if equal else "DIFFER")
    return 0 if equal else 1


def _parse_permutation(text: str):
    text = text.strip()
    if "," in text or " " in text:
        parts = [p for p in text.replace(",", " ").split() if p]
        return tuple(int(p) for p in parts)
    if not text.isdigit():
        raise ValueError(f"cannot read permutation from {text!r}")
    return tuple(int(ch) for ch in text)


def cmd_label(args) -> int:
    perm = _parse_permutation(args.permutation)
    labels, weight = structures.label_permutation(perm, args.scheme)
    line = structures.format_labeling(perm, labels)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "permutation": list(perm),
                    "scheme": args.scheme,
                    "labels": labels,
                    "weight": weight.to_json(),
                }
            )
        )
    else:
        print(f"{line} | {weight.render()}")
    return 0


def _series_by_name(name: str, order: int, points: dict) -> TruncSeries:
    if name in ELEMENTARY_NAMES:
        return elementary_series(name, order)
    if name in CLOSED_FORM_NAMES:
        point = RadicalPoint(values=points) if points else None
        return closed_form_series(name, order, point)
    if name in FAMILY_NAMES:
        return TruncSeries([family_poly(name, n) for n in range(order + 1)])
    raise ValueError(
        f"unknown series {name!r}; elementary {ELEMENTARY_NAMES}, "
        f"closed forms {CLOSED_FORM_NAMES}, or a family name"
    )


def cmd_series(args) -> int:
    points = _parse_assignments(args.at)
    series = _series_by_name(args.name, args.order, points)
    if args.name in FAMILY_NAMES and points:
        values = series.evaluate_coeffs(points)
        series = TruncSeries([LaurentPoly.const(v) for v in values])
    if args.format == "json":
        print(json.dumps(series.to_json()))
    elif args.format == "csv":
        print("n,coefficient")
        for n, coeff in enumerate(series.coeffs):
            print(f"{n},{coeff.render()}")
    else:
        for n, coeff in enumerate(series.coeffs):
            print(f"{n}: {coeff.render()}")
    return 0


def cmd_trees(args) -> int:
    _warn_bound(args.bound)
    if args.count:
        print(structures.count_structures(args.kind, args.n, bound=args.bound))
        return 0
    for structure in structures.enumerate_structures(args.kind, args.n, bound=args.bound):
        print(json.dumps(structures.structure_to_json(args.kind, structure)))
    return 0


def cmd_errata(args) -> int:
    if args.format == "json":
        print(json.dumps(ERRATA, indent=2))
    else:
        for entry in ERRATA:
            print(f"[{entry['id']}] {entry['location']}")
            print(f"  printed:   {entry['printed']}")
            print(f"  corrected: {entry['corrected']}")
            print(f"  confirmed: {entry['confirmation']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gramcalc",
        description=(
            "Exact grammar-derivative calculus: polynomial families, "
            "brute-force oracles, and a mechanical identity verifier."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="print one family polynomial")
    fam.add_argument("name", choices=FAMILY_NAMES)
    fam.add_argument("--n", type=int, required=True)
    fam.add_argument("--format", choices=("text", "json", "csv"), default="text")
    fam.set_defaults(func=cmd_family)

    chk = sub.add_parser("check", help="run identity checks")
    chk.add_argument("name", help="identity name or 'all'")
    chk.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    chk.add_argument(
        "--oracle-max-n",
        type=int,
        default=DEFAULT_ORACLE_MAX_N,
        help="cap for enumeration-backed checks",
    )
    chk.add_argument(
        "--points",
        action="append",
        help="var=rational overrides for radical-point checks (repeat or comma-join)",
    )
    chk.add_argument("--format", choices=("text", "json"), default="text")
    chk.set_defaults(func=cmd_check)

    orc = sub.add_parser("oracle", help="brute-force family values")
    orc.add_argument("name", choices=FAMILY_NAMES)
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--diff", action="store_true", help="compare with the grammar route")
    orc.add_argument("--bound", type=int, default=None, help="raise the enumeration bound")
    orc.add_argument("--format", choices=("text", "json", "csv"), default="text")
    orc.set_defaults(func=cmd_oracle)

    lab = sub.add_parser("label", help="grammatical labeling of a permutation")
    lab.add_argument("scheme", choices=structures.LABEL_SCHEMES)
    lab.add_argument("permutation", help="digits (314562) or comma-separated")
    lab.add_argument("--format", choices=("text", "json"), default="text")
    lab.set_defaults(func=cmd_label)

    ser = sub.add_parser("series", help="truncated generating functions")
    ser.add_argument("name")
    ser.add_argument("--order", type=int, default=12)
    ser.add_argument(
        "--at",
        action="append",
        help="var=rational point (radical closed forms; or evaluate a family series)",
    )
    ser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ser.set_defaults(func=cmd_series)

    tre = sub.add_parser("trees", help="list or count combinatorial structures")
    tre.add_argument("kind", choices=structures.STRUCTURE_KINDS)
    tre.add_argument("--n", type=int, required=True)
    tre.add_argument("--count", action="store_true")
    tre.add_argument("--bound", type=int, default=None)
    tre.set_defaults(func=cmd_trees)

    err = sub.add_parser("errata", help="documented corrections this suite verifies")
    err.add_argument("--format", choices=("text", "json"), default="text")
    err.set_defaults(func=cmd_errata)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GramcalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
