"""Command-line front end.

Usage::

    lambertq approx --kind hp1 --p 2 --n-max 10 --format csv
    lambertq constants --kind lambert --p 3 --c 2
    lambertq growth --p 2 --n-max 200 --variant squared
    lambertq verify --n-max 25 --p 2,3,10

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 mathematical precondition violation (pole or vanishing factor).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from .approximants import (
    ApproximantRecord,
    Kind,
    PoleError,
    ZeroFactorError,
    convergence_table,
    eval_constant,
)
from .bigfloat import BigFloat
from .cyclotomic import Variant, denominator_sequence, growth_report, growth_target
from .verify import run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3
PRECISION_ENV = "LAMBERTQ_PRECISION"
RECORD_FIELDS = (
    "n", "a", "b", "ratio", "residual", "residual_error_bound",
    "exponent", "b_exponent", "measure_estimate",
)
GROWTH_FIELDS = ("n", "digits", "exponent_estimate", "target")


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational {text!r}") from exc


def parse_p_list(text: str) -> list[int]:
    try:
        ps = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse --p {text!r}") from exc
    if not ps or any(p < 2 for p in ps):
        raise UsageError("--p values must be integers >= 2")
    return ps


def parse_precision(text: str | None) -> int | None:
    """'auto' (or unset) -> None, meaning the per-record policy."""
    if text is None:
        text = os.environ.get(PRECISION_ENV, "auto")
    if text == "auto":
        return None
    try:
        bits = int(text)
    except ValueError as exc:
        raise UsageError(f"precision must be a positive integer or 'auto', got {text!r}") from exc
    if bits < 1:
        raise UsageError("precision must be positive")
    return bits


def record_row(rec: ApproximantRecord) -> dict:
    ratio = BigFloat.from_fraction(rec.ratio, 128)
    return {
        "n": rec.n,
        "a": str(rec.a),
        "b": str(rec.b),
        "ratio": ratio.to_decimal(30),
        "residual": rec.residual.to_scientific(20),
        "residual_error_bound": rec.residual.error_string(),
        "exponent": rec.exponent.to_decimal(15),
        "b_exponent": rec.b_exponent.to_decimal(15),
        "measure_estimate": None if rec.measure_estimate is None else rec.measure_estimate.to_decimal(15),
    }


def _short_int(s: str, width: int = 24) -> str:
    digits = s.lstrip("-")
    if len(digits) <= width:
        return s
    sign = "-" if s.startswith("-") else ""
    return f"{sign}{digits[:8]}...{digits[-8:]} ({len(digits)}d)"


def _emit_table(rows: list[dict], fields, out, shorten=()) -> None:
    cells = [[(_short_int(str(r[f])) if f in shorten else ("" if r[f] is None else str(r[f])))
              for f in fields] for r in rows]
    widths = [max([len(f)] + [len(c[i]) for c in cells]) for i, f in enumerate(fields)]
    out.write("  ".join(f.rjust(w) for f, w in zip(fields, widths)) + "\n")
    for c in cells:
        out.write("  ".join(v.rjust(w) for v, w in zip(c, widths)) + "\n")


def _emit(rows: list[dict], fields, fmt: str, out, shorten=()) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=list(fields), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if r[k] is None else r[k]) for k in fields})
    else:
        _emit_table(rows, fields, out, shorten)


def cmd_approx(args, out) -> int:
    c = parse_rational(args.c) if args.c is not None else None
    if args.kind == "lambert" and c is None:
        raise UsageError("--kind lambert requires --c")
    recs = convergence_table(Kind(args.kind), args.p, c, args.n_max, parse_precision(args.precision))
    _emit([record_row(r) for r in recs], RECORD_FIELDS, args.format, out, shorten=("a", "b"))
    return EXIT_OK


def cmd_constants(args, out) -> int:
    c = parse_rational(args.c) if args.c is not None else None
    if args.kind == "lambert" and c is None:
        raise UsageError("--kind lambert requires --c")
    bits = parse_precision(args.precision) or 128
    const = eval_constant(Kind(args.kind), args.p, c, bits)
    digits = max(10, int(bits * math.log10(2)))
    row = {
        "kind": args.kind,
        "p": args.p,
        "c": None if const.c is None else str(const.c),
        "value": const.value.to_decimal(digits),
        "error_bound": const.value.error_string(),
    }
    if args.format == "table":
        label = {"hp1": "h_p(1)", "lnp2": "ln_p(2)", "lambert": f"L(c={row['c']})"}[args.kind]
        out.write(f"{label} with p = {args.p}: {row['value']}  (|error| <= {row['error_bound']})\n")
    else:
        _emit([row], ("kind", "p", "c", "value", "error_bound"), args.format, out)
    return EXIT_OK


def cmd_growth(args, out) -> int:
    variant = Variant(args.variant)
    seq = denominator_sequence(args.p, args.n_max, variant)
    report = growth_report(args.p, args.n_max, variant)
    target = growth_target(variant)
    rows = [
        {
            "n": n,
            "digits": len(str(seq[n])),
            "exponent_estimate": g.to_decimal(15),
            "target": f"{target:.15g}",
        }
        for n, g in zip(range(1, args.n_max + 1), report)
    ]
    _emit(rows, GROWTH_FIELDS, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    ps = parse_p_list(args.p_list)
    results = run_verification(ps, args.n_max, fault=args.inject_fault)
    width = max(len(r.name) for r in results)
    for r in results:
        out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name.ljust(width)}  {r.detail}\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        out.write(f"{len(failed)} invariant(s) failed: {', '.join(failed)}\n")
        return EXIT_VERIFY
    out.write(f"all {len(results)} invariants passed\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambertq",
        description="Rational approximants to q-harmonic, q-logarithm and Lambert series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p_list=False):
        if p_list:
            sp.add_argument("--p", dest="p_list", default="2,3", help="comma-separated bases (default 2,3)")
        else:
            sp.add_argument("--p", type=int, default=2, help="integer base p >= 2 (default 2)")
        sp.add_argument("--n-max", type=int, default=20, help="largest index (default 20)")
        sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
        sp.add_argument("--output", "-o", help="write to this path instead of stdout")

    def kinds(sp):
        sp.add_argument("--kind", choices=[k.value for k in Kind], default="hp1")
        sp.add_argument("--c", help="rational c = a/b for the lambert kind")
        sp.add_argument("--precision", default=None,
                        help=f"bits or 'auto' (default: ${PRECISION_ENV} or auto)")

    sp = sub.add_parser("approx", help="table of approximants (a_n, b_n) with residuals")
    common(sp)
    kinds(sp)
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("constants", help="certified value of the target constant")
    common(sp)
    kinds(sp)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("growth", help="growth of the cyclotomic denominators d_n(p)")
    common(sp)
    sp.add_argument("--variant", choices=[v.value for v in Variant], default="standard")
    sp.set_defaults(func=cmd_growth)

    sp = sub.add_parser("verify", help="run the invariant suite")
    common(sp, p_list=True)
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "p", 2) < 2:
            raise UsageError("--p must be an integer >= 2")
        if args.n_max < 1:
            raise UsageError("--n-max must be >= 1")
        buf = io.StringIO()
        code = args.func(args, buf)
    except UsageError as exc:
        print(f"lambertq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PoleError, ZeroFactorError) as exc:
        print(f"lambertq: error: {exc}", file=sys.stderr)
        return EXIT_MATH
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
