"""Command-line entry point.

Exit codes: 0 success, 1 a verified claim failed, 2 usage error, 3 a
resource guard was hit.
"""
from __future__ import annotations

import argparse
import sys
from math import log

from . import analysis
from .automaton import (
    Automaton,
    build,
    decimal_to_digits,
    evaluate,
    export_dot,
    export_json,
    format_digit_set,
    trace,
)
from .errors import CatalanAutomatonError, DomainError, ResourceError, UnsupportedModulusError, UsageError
from .field import PrimeContext

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

SUITES = ("table1", "table2", "oracle", "density", "mod2", "all")


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _context(p: int) -> PrimeContext:
    try:
        return PrimeContext(p)
    except DomainError as exc:
        raise _Exit(EXIT_USAGE, str(exc)) from exc


def _dense(ctx: PrimeContext) -> Automaton:
    return build(ctx, closed_form=False)


def cmd_build(args) -> int:
    ctx = _context(args.p)
    if args.closed_form:
        if args.dot or args.json:
            raise _Exit(EXIT_USAGE, "closed-form mode has no table to export")
        build(ctx, closed_form=True)
        print(f"p: {ctx.p}")
        print(f"closed-form automaton, states: <= {ctx.p + 3} (p+3)")
        return EXIT_OK
    a = _dense(ctx)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(a))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(export_json(a))
    print(f"p: {ctx.p}")
    print(f"states: {len(a)} <= {ctx.p + 3} (p+3)")
    return EXIT_OK


def cmd_eval(args) -> int:
    ctx = _context(args.p)
    digits = decimal_to_digits(args.n, ctx)
    a = build(ctx, closed_form=True) if args.closed_form else build(ctx)
    if args.trace:
        path = trace(a, digits)
        print(f"start: {a.describe(path[0])}")
        for d, s in zip(digits, path[1:]):
            print(f"digit {d}: {a.describe(s)}")
    print(evaluate(a, digits))
    return EXIT_OK


def _default_digits(p: int, limit: int = 200_000) -> int:
    return max(1, int(log(limit) / log(p) + 1e-9))


def cmd_verify(args) -> int:
    ctx = _context(args.p)
    p = ctx.p
    suites = {"table1", "table2", "oracle", "density"} if args.suite == "all" else {args.suite}
    if args.suite == "all" and p == 2:
        suites.add("mod2")
    if p < 5 and suites & {"table1", "table2"}:
        if args.suite != "all":
            raise _Exit(EXIT_USAGE, f"suite {args.suite} needs p >= 5 (closed forms only exist there)")
        suites -= {"table1", "table2"}

    reports = []
    a = _dense(ctx) if suites - {"table1", "mod2"} else None
    if "table1" in suites:
        reports.append(analysis.table1_check(ctx))
    if "table2" in suites:
        reports.append(analysis.state_bound_check(a))
        reports.append(analysis.table2_check(a))
    if "oracle" in suites:
        reports += analysis.oracle_check(a, args.max_n)
        reports.append(analysis.pk_minus_1_check(ctx, args.k_max, a))
        if p >= 5:
            reports.append(analysis.forced_zero_residues_check(ctx, args.max_n))
            reports.append(analysis.forced_zero_digits_check(a, args.max_n))
    if "density" in suites:
        reports += analysis.density_check(a, args.digits or _default_digits(p))
    if "mod2" in suites:
        reports.append(analysis.mod2_characterization_check(args.mod2_k))

    if args.json:
        for r in reports:
            print(r.to_json())
    else:
        print(analysis.format_reports(reports))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def cmd_density(args) -> int:
    ctx = _context(args.p)
    a = _dense(ctx)
    series = list(analysis.census_series(a, args.digits))
    census = series[-1]
    print(f"p = {ctx.p}, n < {ctx.p}^{args.digits}")
    print("residue  count  density")
    for r in range(ctx.p):
        print(f"{r}  {census.counts[r]}  {census.density(r)}")
    print(f"total  {census.total}  {sum(census.densities().values())}")
    print("zero-class density by digit count:")
    for c in series:
        print(f"k={c.k}  {c.density(0)}")
    return EXIT_OK


def cmd_table(args) -> int:
    ctx = _context(args.p)
    forced = analysis.forced_zero_digit_set(ctx)
    if not forced.applicable:
        raise _Exit(EXIT_USAGE, f"p={ctx.p}: the forced-zero digit set {{(p+1)/2..p-2}} is empty for p < 5")
    print(f"forced-zero digits: {format_digit_set(forced.digits)}")
    print(f"forced-zero residues: n = r (mod {ctx.p}) for r in {format_digit_set(forced.digits)}")
    return EXIT_OK


def cmd_gens(args) -> int:
    ctx = _context(args.p)
    if ctx.p < 5:
        raise _Exit(EXIT_USAGE, f"generator check needs p >= 5, got p={ctx.p}")
    g = analysis.generator_check(ctx)
    print(f"{str(g.generates).lower()}, closure size {g.size}")
    print(f"generators: {sorted(g.generators)}")
    if g.matches_constant_states is not None:
        print(f"closure equals constant states: {str(g.matches_constant_states).lower()}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catalan-automaton", description="Automata for Catalan numbers mod p.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build the automaton and export it")
    b.add_argument("p", type=int)
    b.add_argument("--dot", metavar="PATH")
    b.add_argument("--json", metavar="PATH")
    b.add_argument("--closed-form", action="store_true")
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("eval", help="print C_n mod p")
    e.add_argument("p", type=int)
    e.add_argument("n", help="nonnegative decimal integer")
    e.add_argument("--trace", action="store_true")
    e.add_argument("--closed-form", action="store_true")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("p", type=int)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--max-n", type=int, default=10_000)
    v.add_argument("--k-max", type=int, default=20, help="largest k for the n = p^k - 1 check")
    v.add_argument("--digits", type=int, default=None, help="digit count for the density suite")
    v.add_argument("--mod2-k", type=int, default=16)
    v.add_argument("--json", action="store_true", help="one JSON report per line")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", help="exact residue census for n < p^k")
    d.add_argument("p", type=int)
    d.add_argument("--digits", type=int, default=1)
    d.set_defaults(func=cmd_density)

    t = sub.add_parser("table", help="forced-zero digit set")
    t.add_argument("p", type=int)
    t.set_defaults(func=cmd_table)

    g = sub.add_parser("gens", help="do the central binomials generate the unit group")
    g.add_argument("p", type=int)
    g.set_defaults(func=cmd_gens)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, DomainError, UnsupportedModulusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalanAutomatonError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
