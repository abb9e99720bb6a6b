"""End-to-end reproduction report.

Each section returns a :class:`Check`; the report is plain text with a fixed
section order and no timestamps, so two runs on the same inputs are
byte-identical.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .alexander import alexander_report, branched_cover_alexander, is_trivial_alexander, torres_check
from .certify import (ALL_INTEGRAL, NO_CONCLUSION, integral_specialization_verdict, integrality,
                      m137_checks, validate_knot_table, verify_factorization)
from .cyclotomic import m137_unit_report, prime_power, unit_2cos_shift
from .domains import QuadraticField
from .elimination import eliminate_against
from .fixtures import Fixtures
from .irreducibility import (CERTIFIED, CertificateError, SpecializationIdeal,
                             certify_root_of_unity_specialization, dzannier_driver,
                             specialize_irreducible_Q)
from .poly import format_expr, is_palindromic, reciprocal_lift, stretch
from .words import derive_meridian_trace

PASS, FAIL, INCONCLUSIVE, SKIPPED = "PASS", "FAIL", "INCONCLUSIVE", "SKIPPED"

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

ROOT_OF_UNITY_DS = (3, 5, 7, 9, 11)


@dataclass
class Check:
    name: str
    status: str
    details: list = field(default_factory=list)

    def lines(self) -> list:
        return [f"[{self.status}] {self.name}"] + [f"  {d}" for d in self.details]


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------- sections

def check_derive_q(fx: Fixtures) -> Check:
    m0 = fx.presentation("L11n106").word("m0")
    q = derive_meridian_trace(m0)
    ok = q == fx.poly("Q") and format_expr(q) == format_expr(fx.poly("Q"))
    return Check("derive-q", _status(ok), [f"terms={len(q)} digest={q.digest()}",
                                            "MATCH fixture Q" if ok else "MISMATCH fixture Q"])


def check_eliminate(fx: Fixtures) -> Check:
    P, Q, R = fx.poly("P"), fx.poly("Q"), fx.poly("R")
    rep = eliminate_against(P.with_vars(Q.vars), Q, "X", R)
    return Check("eliminate", _status(rep.divisible), rep.lines())


def check_factor_r(fx: Fixtures) -> Check:
    R = fx.poly("R")
    target = R.specialize({"t": -2}).with_vars(("Y",))
    claims = fx.factors("R_minus2")
    fc = verify_factorization(claims, target)
    has = any(format_expr(f) == "4*Y^2 - 17*Y + 22" for f, _ in claims)
    return Check("factor-R", _status(fc.equal and has),
                 [fc.line("R(-2,Y)"), f"contains 4*Y^2 - 17*Y + 22: {'yes' if has else 'no'}"])


def check_integrality(fx: Fixtures) -> Check:
    K = QuadraticField(-7)
    y0 = K.element(17, 3, 8)
    value = fx.poly("R").evaluate({"t": -2, "Y": y0}, K)
    verdicts = [integrality(K.element(17, 3, 8)), integrality(K.element(13, 7, 8))]
    ok = value == 0 and all(not v.integral and v.certifying_primes == {2} for v in verdicts)
    return Check("integrality", _status(ok),
                 [f"R(-2, {y0}) = {0 if value == 0 else value}"] + [v.line() for v in verdicts])


def check_lift(fx: Fixtures) -> Check:
    S = reciprocal_lift(fx.poly("R"), 8)
    ok_match = format_expr(S) == format_expr(fx.poly("S"))
    pal = is_palindromic(fx.poly("S"), "X", 16)
    return Check("lift", _status(ok_match and pal),
                 [f"X^8*R(X+1/X,Y) {'MATCH' if ok_match else 'MISMATCH'} fixture S",
                  f"palindromic in X: {'yes' if pal else 'no'}"])


def check_dzannier(fx: Fixtures, m_max: int = 24) -> Check:
    S = fx.poly("S")
    preferred = {m: [(2, p)] for m, p in fx.table()}
    rep = dzannier_driver(S, m_max, name="S", preferred=preferred)
    vertex_ok = all(e.has_01_vertex for e in rep.entries)
    ok = not rep.failing and vertex_ok
    lines = rep.lines() + [f"(0,1) vertex for all m <= {m_max}: {'yes' if vertex_ok else 'no'}"]
    return Check("dzannier", _status(ok), lines)


def check_table(fx: Fixtures) -> Check:
    S = fx.poly("S")
    lines, ok = [], True
    for m, p in fx.table():
        label = f"S[X^{m}]"
        try:
            cert = specialize_irreducible_Q(stretch(S, "X", m), SpecializationIdeal("X", 2, p), label)
            lines.append(cert.line())
            ok &= cert.verdict == CERTIFIED
        except CertificateError as exc:
            lines.append(f"CERT {label} error: {exc}")
            ok = False
    return Check("table", _status(ok), lines)


def check_roots(fx: Fixtures, ds=ROOT_OF_UNITY_DS, budget: int = 10000) -> Check:
    S = fx.poly("S")
    lines, all_ok = [], True
    for d in ds:
        cert = certify_root_of_unity_specialization(S, d, p_budget=budget, name="S")
        lines.append(cert.line())
        all_ok &= cert.verdict == CERTIFIED
    return Check("roots", PASS if all_ok else INCONCLUSIVE, lines)


def check_units(fx: Fixtures, d_max: int = 199) -> Check:
    bad0 = [d for d in range(3, d_max + 1, 2) if not unit_2cos_shift(d, 0).is_unit]
    bad2 = [d for d in range(3, d_max + 1, 2) if unit_2cos_shift(d, 2).is_unit == prime_power(d)]
    return Check("units", _status(not bad0 and not bad2), [
        f"2cos(2pi/d) unit for odd 3 <= d <= {d_max}: " + ("yes" if not bad0 else f"no at {bad0}"),
        f"2cos(2pi/d)-2 unit iff d not a prime power: " + ("yes" if not bad2 else f"no at {bad2}"),
    ])


def check_r1(fx: Fixtures) -> Check:
    R1, R = fx.poly("R1"), fx.poly("R")
    fc = verify_factorization(fx.factors("R1_2"), R1.specialize({"t": 2}).with_vars(("Y",)))
    v1 = integral_specialization_verdict(R1, True)
    v2 = integral_specialization_verdict(R, True)
    ok = fc.equal and v1 == ALL_INTEGRAL and v2 == NO_CONCLUSION
    return Check("R1", _status(ok), [fc.line("R1(2,Y)"),
                                     f"R1 at t = 2cos(2pi/d), d odd: {v1}",
                                     f"R at t = 2cos(2pi/d), d odd: {v2}"])


def check_m137(fx: Fixtures) -> Check:
    pres = fx.presentation("m137")
    rep = m137_checks(fx.poly("m137_P"), str(pres.relators[0]), fx.matrices("m137"))
    units = {d: m137_unit_report(d) for d in (9, 10, 14)}
    ok = (rep.passed and units[9].obstructed and not units[9].s_minus_2.is_unit
          and not units[10].obstructed and not units[14].obstructed)
    lines = rep.lines + [u.line() for u in units.values()]
    lines.append(f"{units[10].conclusion()} (d=10, d=14)")
    return Check("m137", _status(ok), lines)


def check_alexander(fx: Fixtures, d_max: int = 21, trivial_max: int = 99) -> Check:
    delta = fx.poly("alexander")
    torres = torres_check(delta)
    lines = [f"TORRES quotient={torres.quotient} delta(1,1)={torres.value_at_one}"]
    ok = torres.ok
    for d in range(3, d_max + 1, 2):
        r = alexander_report(delta, d)
        lines.append(r.line())
        ok &= r.degree == d - 1 and r.lead != 0 and not r.trivial
    ok &= alexander_report(delta, 3).lead in (49, -49)
    trivial = [d for d in range(d_max + 2, trivial_max + 1, 2)
               if is_trivial_alexander(branched_cover_alexander(delta, d))]
    lines.append(f"nontrivial for odd d <= {trivial_max}: " + ("yes" if not trivial else f"no at {trivial}"))
    return Check("alexander", _status(ok and not trivial), lines)


def check_knots(fx: Fixtures) -> Check:
    rep = validate_knot_table(fx.knots())
    ok = rep.valid and rep.total == 170
    return Check("knots", _status(ok), [rep.line()])


SECTIONS = (
    ("derive-q", check_derive_q),
    ("eliminate", check_eliminate),
    ("factor-R", check_factor_r),
    ("integrality", check_integrality),
    ("lift", check_lift),
    ("dzannier", check_dzannier),
    ("table", check_table),
    ("roots", check_roots),
    ("units", check_units),
    ("R1", check_r1),
    ("m137", check_m137),
    ("alexander", check_alexander),
    ("knots", check_knots),
)
SECTION_NAMES = tuple(name for name, _ in SECTIONS)


def exit_status(checks) -> int:
    statuses = {c.status for c in checks}
    if FAIL in statuses:
        return EXIT_FAIL
    if INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def reproduce_paper(fx: Fixtures | None = None, skip=(), budget: int = 10000) -> list:
    """Run every section in order; ``skip`` names sections to mark skipped."""
    fx = fx or Fixtures()
    unknown = set(skip) - set(SECTION_NAMES)
    if unknown:
        raise ValueError(f"unknown section(s): {', '.join(sorted(unknown))}")
    out = []
    for name, fn in SECTIONS:
        if name in skip:
            out.append(Check(name, SKIPPED))
        elif name == "roots":
            out.append(fn(fx, budget=budget))
        else:
            out.append(fn(fx))
    return out


def render(checks) -> str:
    lines = []
    for c in checks:
        lines.extend(c.lines())
    counts = {s: sum(c.status == s for c in checks) for s in (PASS, FAIL, INCONCLUSIVE, SKIPPED)}
    lines.append("SUMMARY " + " ".join(f"{k.lower()}={v}" for k, v in counts.items()))
    return "\n".join(lines) + "\n"
