"""Command-line front end.

Exit status: 0 all checks passed or certified, 1 a check failed, 2 some
result is inconclusive, 3 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import pipeline as pl
from .alexander import alexander_report
from .certify import integrality
from .cyclotomic import m137_unit_report
from .domains import QuadraticField, _QUAD_RE
from .fixtures import FixtureError, Fixtures
from .irreducibility import (CERTIFIED, DEFAULT_POINTS, CertificateError, SpecializationIdeal,
                             certify_root_of_unity_specialization, dzannier_driver, find_certificate,
                             newton_polygon, specialize_irreducible_Q, prime_stream)
from .poly import MultiPoly, PolyError, format_expr, load_poly, stretch
from .words import WordError, derive_meridian_trace, parse_word, trace_poly


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(pl.EXIT_USAGE)


def _poly(fx: Fixtures, name: str) -> MultiPoly:
    path = Path(name)
    if path.suffix == ".poly" and path.is_file():
        return load_poly(path.read_text(encoding="utf-8"))[0]
    return fx.poly(name)


def _emit(check: pl.Check) -> int:
    print("\n".join(check.lines()))
    return pl.exit_status([check])


# ---------------------------------------------------------------- handlers

def cmd_trace_poly(args, fx):
    if not args.word:
        raise UsageError("--word is required")
    w = parse_word(args.word)
    print(f"tr({w}) = {format_expr(trace_poly(w))}")
    return pl.EXIT_OK


def cmd_derive_q(args, fx):
    q = derive_meridian_trace(fx.presentation("L11n106").word("m0"))
    print(format_expr(q))
    ok = format_expr(q) == format_expr(fx.poly("Q"))
    print("MATCH fixture Q" if ok else "MISMATCH fixture Q")
    return pl.EXIT_OK if ok else pl.EXIT_FAIL


def cmd_eliminate(args, fx):
    return _emit(pl.check_eliminate(fx))


def cmd_lift(args, fx):
    return _emit(pl.check_lift(fx))


def cmd_newton(args, fx):
    f = _poly(fx, args.fixture or "S")
    m = args.m or 1
    g = stretch(f, f.vars[0], m) if m > 1 else f
    poly = newton_polygon(g)
    print("vertices " + " ".join(f"({i},{j})" for i, j in poly.vertices))
    print(f"vertex_gcd={poly.vertex_gcd()} has_(0,1)={'yes' if (0, 1) in poly.vertices else 'no'}")
    return pl.EXIT_OK


def cmd_certify(args, fx):
    f = _poly(fx, args.fixture or "S")
    var = f.vars[0]
    rows = fx.table()
    status = pl.EXIT_OK
    if args.table == "paper":
        for m, p in rows:
            cert = specialize_irreducible_Q(stretch(f, var, m), SpecializationIdeal(var, 2, p),
                                            f"{args.fixture or 'S'}[{var}^{m}]")
            print(cert.line())
            if cert.verdict != CERTIFIED:
                status = pl.EXIT_INCONCLUSIVE
        return status
    preferred = dict(rows)
    primes = list(prime_stream(3, 200))
    for m in range(1, (args.m or 48) + 1):
        pref = [(2, preferred[m])] if m in preferred else []
        cert = find_certificate(stretch(f, var, m), DEFAULT_POINTS, primes, var=var,
                                name=f"{args.fixture or 'S'}[{var}^{m}]", preferred=pref)
        print(cert.line())
        if cert.verdict != CERTIFIED:
            status = pl.EXIT_INCONCLUSIVE
    return status


def cmd_dzannier(args, fx):
    f = _poly(fx, args.fixture or "S")
    preferred = {m: [(2, p)] for m, p in fx.table()} if (args.fixture or "S") == "S" else None
    rep = dzannier_driver(f, args.m, name=args.fixture or "S", var=f.vars[0], preferred=preferred)
    print("\n".join(rep.lines()))
    return pl.EXIT_OK if not rep.failing else pl.EXIT_INCONCLUSIVE


def cmd_dehn_cert(args, fx):
    f = _poly(fx, args.fixture or "S")
    ds = [args.d] if args.d else list(pl.ROOT_OF_UNITY_DS)
    status = pl.EXIT_OK
    for d in ds:
        cert = certify_root_of_unity_specialization(f, d, p_budget=args.budget_primes,
                                                    var=f.vars[0], name=args.fixture or "S")
        print(cert.line())
        if args.verbose:
            for note in cert.notes:
                print(f"  {note}")
        if cert.verdict != CERTIFIED:
            status = pl.EXIT_INCONCLUSIVE
    return status


def cmd_units(args, fx):
    if not args.d:
        return _emit(pl.check_units(fx))
    rep = m137_unit_report(args.d)
    print(rep.line())
    for label, v in (("s+1", rep.s_plus_1), ("s-2", rep.s_minus_2)):
        print(f"  {label}: {v.description} norm={v.norm} unit={'yes' if v.is_unit else 'no'}")
    print(f"  {rep.conclusion()}")
    return pl.EXIT_OK


def cmd_alexander(args, fx):
    if not args.d:
        return _emit(pl.check_alexander(fx))
    rep = alexander_report(fx.poly("alexander"), args.d)
    print(rep.line())
    print(f"  {format_expr(rep.polynomial)}")
    return pl.EXIT_OK


def _parse_element(text: str):
    m = _QUAD_RE.match(text.replace(" ", ""))
    if m:
        return QuadraticField(int(m.group(4))).parse_coeff(text.replace(" ", ""))
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"cannot parse element {text!r}; use (r+s*sqrt(D))/q or a rational") from None


def cmd_integrality(args, fx):
    if args.element:
        v = integrality(_parse_element(args.element))
        print(v.line())
        return pl.EXIT_OK
    return _emit(pl.check_integrality(fx))


def cmd_m137(args, fx):
    return _emit(pl.check_m137(fx))


def cmd_reproduce_paper(args, fx):
    skip = [s for item in args.skip for s in item.split(",") if s]
    try:
        checks = pl.reproduce_paper(fx, skip=skip, budget=args.budget_primes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(pl.render(checks))
    return pl.exit_status(checks)


COMMANDS = {
    "trace-poly": (cmd_trace_poly, "trace polynomial of a word in tr a, tr b, tr ab"),
    "derive-q": (cmd_derive_q, "derive the meridian-trace polynomial Q and compare"),
    "eliminate": (cmd_eliminate, "eliminate X from P and Q and divide by R"),
    "lift": (cmd_lift, "reciprocal lift of R compared with S"),
    "newton": (cmd_newton, "Newton polygon vertices of f(X^m, Y)"),
    "certify": (cmd_certify, "specialization certificates for f(X^m, Y)"),
    "dzannier": (cmd_dzannier, "absolute-irreducibility sweep over m"),
    "dehn-cert": (cmd_dehn_cert, "per-d root-of-unity certificates"),
    "units": (cmd_units, "unit status of s+1 and s-2 at 2cos(2pi/n)"),
    "alexander": (cmd_alexander, "branched-cover Alexander polynomials"),
    "integrality": (cmd_integrality, "minimal polynomial and certifying primes"),
    "m137": (cmd_m137, "exact checks for m137"),
    "reproduce-paper": (cmd_reproduce_paper, "run every check in order"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tracecert", description=__doc__.splitlines()[0])
    parser.add_argument("--fixtures", metavar="DIR", help="directory overriding the bundled fixtures")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--fixture", help="fixture name (P, Q, R, S, R1, ...) or a .poly file")
        p.add_argument("--d", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--table", choices=("paper", "extended"), default="paper")
        p.add_argument("--skip", action="append", default=[], metavar="SECTION")
        p.add_argument("--budget-primes", type=int, default=10000)
        p.add_argument("--word")
        p.add_argument("-v", "--verbose", action="store_true")
        if name == "integrality":
            p.add_argument("element", nargs="?", help="(r+s*sqrt(D))/q or a rational")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fx = Fixtures(args.fixtures)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args, fx)
    except (UsageError, FixtureError, WordError, PolyError, CertificateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return pl.EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
