"""Command-line front end.

    stevin root "x^2-2" --bracket 1 2 --digits 6
    stevin ivt "x^2-2" --bracket 1 2 --tol 1/1000000 --rank 3
    stevin compare "x^2-2" --bracket 1 2 --digits 10 --json
    stevin derive "x^3-2*x" 1
    stevin order "i^3 + 5*i^5"        stevin order --catalog exp_neg_inv
    stevin hyper sign "(-1)^n/n" --filter point:0
    stevin hyper los "(1/n+n)*(1/n)" "(1/n)^2+1"
    stevin render "(10^n-1)/(3*10^n)" --digits 5

Exit status: 0 on success, 1 on a mathematical error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import decimals, orders, ultrapower
from .errors import ExpressionSyntaxError, StevinError
from .exact import format_rational, parse_rational, poly_parse
from .lightstone import lightstone_render

DIGITS_ENV = "STEVIN_DIGITS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    if raw is None:
        return 10
    try:
        return _positive_int(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{DIGITS_ENV}: {exc}")


def _q(x: Fraction) -> str:
    return format_rational(x)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    parser = _Parser(prog="stevin", description="Stevin decimals, Cauchy orders and hypernumbers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def bracketed(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("polynomial")
        p.add_argument("--bracket", nargs=2, type=_rational, metavar=("A", "B"), required=True)
        p.add_argument("--max-steps", type=_positive_int, default=decimals.DEFAULT_MAX_STEPS)
        return p

    p = bracketed("root", "decimal digits of a root by ten-way subdivision")
    p.add_argument("--digits", type=_positive_int)

    p = bracketed("ivt", "Cauchy bisection to a width tolerance")
    p.add_argument("--tol", type=_rational, default=Fraction(1, 10**6))
    p.add_argument("--rank", type=_positive_int, help="also report digit stability at this rank")

    p = bracketed("compare", "iterations needed by ten-way subdivision and by bisection")
    p.add_argument("--digits", type=_positive_int)

    p = sub.add_parser("derive", parents=[common], help="derivative as st(dy/dx)")
    p.add_argument("polynomial")
    p.add_argument("at", type=_rational)

    p = sub.add_parser("order", parents=[common], help="order of an infinitesimal")
    p.add_argument("series", nargs="?")
    p.add_argument("--catalog", help="exp_neg_inv, inv_log or monomial:<a>")
    p.add_argument("--probes", nargs="+", type=_rational, default=[Fraction(1, 10), 1, 10, 100])
    p.add_argument("--depth", type=int, default=8)

    p = sub.add_parser("hyper", parents=[common], help="hypernumbers in Q^N modulo a filter")
    p.add_argument("action", choices=["sign", "st", "classify", "los"])
    p.add_argument("expr")
    p.add_argument("rhs", nargs="?", help="right-hand side for 'los'")
    p.add_argument("--filter", default="frechet")
    p.add_argument("--digits", type=_positive_int)

    p = sub.add_parser("render", parents=[common], help="semicolon rendering of a finite hypernumber")
    p.add_argument("expr")
    p.add_argument("--filter", default="frechet")
    p.add_argument("--digits", type=_positive_int)
    return parser


def _run(args) -> tuple[dict, str]:
    """Returns (JSON report, human-readable text)."""
    cmd = args.command
    report: dict = {"command": cmd}

    if cmd in ("root", "ivt", "compare"):
        p = poly_parse(args.polynomial)
        a, b = args.bracket
        report["input"] = {"polynomial": str(p), "bracket": [_q(a), _q(b)]}

    if cmd == "root":
        n = args.digits or _default_digits()
        d = decimals.stevin_root(p, a, b, n, max_steps=args.max_steps)
        report.update(digits=n, result=str(d), exact=d.exact)
        return report, str(d) + (" (exact)" if d.exact else "")

    if cmd == "ivt":
        br = decimals.cauchy_bisect(p, a, b, args.tol, max_steps=args.max_steps)
        report["input"]["tol"] = _q(args.tol)
        report.update(result=[_q(br.lo), _q(br.hi)], iterations=br.step, exact=br.exact)
        text = f"[{_q(br.lo)}, {_q(br.hi)}] after {br.step} halvings" + (" (exact root)" if br.exact else "")
        if args.rank:
            rep = decimals.digit_stability(decimals.bisection_enclosures(p, a, b), args.rank, args.max_steps)
            report["stability"] = {
                "rank": rep.rank,
                "status": rep.status,
                "iteration": rep.iteration,
                "digit": rep.digit,
                "grid_point": None if rep.grid_point is None else _q(rep.grid_point),
            }
            text += f"\n{rep}"
        return report, text

    if cmd == "compare":
        d = args.digits or _default_digits()
        c = decimals.compare_strategies(p, a, b, d)
        report.update(
            polynomial=str(p),
            digits=d,
            stevin_iterations=c.stevin_iterations,
            bisect_iterations=c.bisect_iterations,
            exact_hit=c.exact_hit,
            result=f"stevin {c.stevin_iterations}, bisect {c.bisect_iterations}",
        )
        text = f"stevin_iterations: {c.stevin_iterations}\nbisect_iterations: {c.bisect_iterations}"
        return report, text + ("\nexact root hit" if c.exact_hit else "")

    if cmd == "derive":
        p = poly_parse(args.polynomial)
        v = orders.deriv_at(p, args.at)
        report.update(input={"polynomial": str(p), "at": _q(args.at)}, result=_q(v))
        return report, _q(v)

    if cmd == "order":
        if (args.series is None) == (args.catalog is None):
            raise UsageError("order: give either a series or --catalog")
        if args.series is not None:
            x = orders.parse_series(args.series)
            o = orders.order(x)
            report.update(input={"series": str(x)}, result=str(o))
            return report, str(o)
        try:
            f = orders.CatalogFunction.parse(args.catalog)
        except ValueError as exc:
            raise UsageError(str(exc))
        est = orders.estimate_order_numeric(f, args.probes, args.depth)
        report.update(
            input={"catalog": str(f), "probes": [_q(Fraction(r)) for r in args.probes], "depth": args.depth},
            result=str(est.order),
            bracket=[None if est.lower is None else _q(est.lower), None if est.upper is None else _q(est.upper)],
        )
        return report, str(est)

    oracle = _oracle(args.filter)
    report["oracle"] = str(oracle)
    u = ultrapower.parse_generator(args.expr, oracle)

    if cmd == "render":
        k = args.digits or _default_digits()
        r = lightstone_render(u, k, oracle)
        report.update(input={"generator": str(u)}, digits=k, result=str(r).split("…")[0], pattern=r.pattern_label)
        return report, str(r)

    report["input"] = {"generator": str(u)}
    if args.action == "sign":
        s = ultrapower.sign(u, oracle)
        report["result"] = s
        return report, s
    if args.action == "classify":
        c = ultrapower.classify(u, oracle)
        report["result"] = str(c)
        return report, str(c)
    if args.action == "st":
        v = ultrapower.standard_part(u, oracle, args.digits)
        text = str(v) if args.digits else _q(v)
        if args.digits:
            report["digits"] = args.digits
        report["result"] = text
        return report, text
    if args.rhs is None:
        raise UsageError("hyper los: needs a right-hand side")
    rhs = ultrapower.parse_generator(args.rhs, oracle)
    report["input"]["rhs"] = str(rhs)
    verdict = ultrapower.los_check(u, rhs, oracle)
    report["result"] = verdict
    return report, verdict


def _oracle(text: str) -> ultrapower.FilterOracle:
    try:
        return ultrapower.FilterOracle.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    as_json = "--json" in argv
    parser = build_parser()
    code = 0
    try:
        args = parser.parse_args(argv)
        report, text = _run(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, ExpressionSyntaxError) as exc:
        code, report, text = 2, {"error": type(exc).__name__, "message": str(exc)}, None
    except StevinError as exc:
        code, report, text = 1, {"error": type(exc).__name__, "message": str(exc)}, None
    if code:
        report = {"command": argv[0] if argv else None, **report}
        if as_json:
            print(json.dumps(report, separators=(",", ":")))
        else:
            print(f"error: {report['error']}: {report['message']}", file=sys.stderr)
        return code
    print(json.dumps(report, separators=(",", ":")) if as_json else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
