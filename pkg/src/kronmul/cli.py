"""Command-line front end.

Subcommands:
  multiply F G   full pipeline; prints the canonical product
  reduce F G     prints the two univariate images and the plan record
  recover H      inverts a plan over a univariate polynomial file
  verify F G     compares a pipeline result against direct multiplication
  bench          table3 / sweep experiment harness, CSV or JSON

Polynomial files use the multivariate grammar (x1, x2, ...); univariate
files use a bare x.  '-' reads stdin.  Exit codes: 0 success, 2 bad input
or flags, 3 computation error, 4 plan/polynomial mismatch.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import experiments, pipeline, unimul
from . import reduce as red
from .errors import (
    ExponentOutOfRangeError,
    KronmulError,
    NegativeExponentError,
    ParseError,
)
from .rings import INTEGERS, RingSpec
from .textfmt import format_poly, format_unipoly, parse_poly, parse_unipoly

_VAR_RE = re.compile(r"x([0-9]+)")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _ring(args) -> RingSpec:
    if getattr(args, "modulus", None) is None:
        return INTEGERS
    try:
        return RingSpec(args.modulus)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from exc


def _infer_nvars(texts: list[str]) -> int:
    found = [int(m) for text in texts for m in _VAR_RE.findall(text)]
    return max(found) if found else 1


def _load_pair(args):
    text_f = _read(args.f)
    text_g = _read(args.g)
    nvars = args.nvars or _infer_nvars([text_f, text_g])
    ring = _ring(args)
    try:
        f = parse_poly(text_f, nvars, ring)
    except ParseError as exc:
        raise ParseError(f"{args.f}: {exc}", exc.offset) from exc
    try:
        g = parse_poly(text_g, nvars, ring)
    except ParseError as exc:
        raise ParseError(f"{args.g}: {exc}", exc.offset) from exc
    return f, g


def _bases(args):
    if getattr(args, "bases", None) is None:
        return None
    return [int(b) for b in args.bases.split(",")]


def _backend(args) -> unimul.BackendChoice:
    kind = getattr(args, "backend", "auto")
    return unimul.BackendChoice(kind)


def cmd_multiply(args) -> int:
    f, g = _load_pair(args)
    h, stats = pipeline.multiply(f, g, args.method, _backend(args), _bases(args))
    print(format_poly(h))
    if args.stats:
        print(json.dumps(stats.to_record()))
    return 0


def cmd_reduce(args) -> int:
    f, g = _load_pair(args)
    if args.method == "crt":
        outcome = red.crt_reduce(f, g, _bases(args))
    else:
        outcome = red.REDUCERS[args.method](f, g)
    print(format_unipoly(outcome.f_x))
    print(format_unipoly(outcome.g_x))
    print(red.plan_to_text(outcome.plan))
    return 0


def cmd_recover(args) -> int:
    text = _read(args.h)
    ring = _ring(args)
    h_x = parse_unipoly(text, ring)
    plan_text = args.plan if args.plan else _read(args.plan_file)
    try:
        plan = red.plan_from_text(plan_text)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from exc
    print(format_poly(red.recover(h_x, plan)))
    return 0


def cmd_verify(args) -> int:
    f, g = _load_pair(args)
    result = pipeline.verify(f, g, args.method, _backend(args), _bases(args))
    if result.ok:
        print("equal")
        return 0
    d = result.divergence
    mono = "*".join(f"x{i}^{e}" for i, e in enumerate(d.exponents, 1))
    print(f"diverges at {mono}: expected {d.expected}, got {d.actual}")
    return 3


def _parse_l_values(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _emit_report(report: experiments.RatioReport, args) -> None:
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        text = report.csv_text()
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bench(args) -> int:
    if args.regime == "table3":
        tuples = ([tuple(int(d) for d in t.split(",")) for t in args.tuple]
                  if args.tuple else experiments.PAPER_TUPLES)
        report = experiments.run_table3(tuples, args.terms, args.trials,
                                        args.seed)
    else:
        if not args.tuple:
            raise ParseError("sweep requires --tuple", 0)
        degrees = tuple(int(d) for d in args.tuple[-1].split(","))
        l_values = _parse_l_values(args.L)
        report = experiments.run_fig1_sweep(degrees, l_values, args.terms,
                                            args.trials, args.seed)
    _emit_report(report, args)
    return 0


def _add_ring_flags(p):
    p.add_argument("--modulus", type=int, default=None,
                   help="prime field modulus (default: integer coefficients)")
    p.add_argument("--nvars", type=int, default=None,
                   help="variable count (default: inferred from the input)")


def _add_method_flags(p):
    p.add_argument("--method", default="iks",
                   choices=["direct", "sks", "iks", "crt", "hybrid"])
    p.add_argument("--bases", default=None,
                   help="explicit comma-separated bases for --method crt")
    p.add_argument("--backend", default="auto",
                   choices=["auto", "sparse", "ntt"])


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="kronmul",
        description="multiply sparse multivariate polynomials through "
                    "reversible univariate reductions")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiply", help="reduce, multiply, recover")
    p.add_argument("f")
    p.add_argument("g")
    _add_method_flags(p)
    _add_ring_flags(p)
    p.add_argument("--stats", action="store_true",
                   help="also print a stats record as JSON")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("reduce", help="print univariate images and the plan")
    p.add_argument("f")
    p.add_argument("g")
    _add_method_flags(p)
    _add_ring_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("recover", help="invert a plan over a univariate file")
    p.add_argument("h", help="univariate polynomial file (bare x grammar)")
    p.add_argument("--plan", default=None, help="plan record text")
    p.add_argument("--plan-file", default=None)
    p.add_argument("--modulus", type=int, default=None)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("verify", help="compare a method against direct")
    p.add_argument("f")
    p.add_argument("g")
    _add_method_flags(p)
    _add_ring_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="degree-ratio experiment harness")
    p.add_argument("regime", choices=["table3", "sweep"])
    p.add_argument("--tuple", action="append", default=None,
                   help="comma-separated degree tuple; repeatable for table3")
    p.add_argument("--terms", type=int, default=10_000)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--L", default="4,8,16,32,48,64",
                   help="sweep L values: comma list, ranges like 1..64 allowed")
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=cmd_bench)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NegativeExponentError, ExponentOutOfRangeError) as exc:
        print(f"error: plan does not match the polynomial: {exc}",
              file=sys.stderr)
        return 4
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KronmulError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
