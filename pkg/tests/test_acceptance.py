"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s -v`` to see one PASS/FAIL line
per criterion followed by a summary.
"""
import itertools
import random

import pytest
import sympy
from sympy.ntheory import primefactors

from tracecert import finite_fields as ff
from tracecert.alexander import (TORRES_QUOTIENT, alexander_report, branched_cover_alexander,
                                 is_trivial_alexander, torres_check)
from tracecert.certify import (ALL_INTEGRAL, NO_CONCLUSION, integral_specialization_verdict,
                               integrality, m137_checks, verify_factorization)
from tracecert.cyclotomic import cyclotomic, m137_unit_report, unit_2cos_shift
from tracecert.domains import QuadraticField
from tracecert.elimination import divides, resultant_bareiss, resultant_modular
from tracecert.irreducibility import (CERTIFIED, SpecializationIdeal, dzannier_driver,
                                      newton_polygon, specialize_irreducible_Q)
from tracecert.poly import MultiPoly, format_expr, is_palindromic, parse_poly, reciprocal_lift, stretch
from tracecert.words import (GFp2, GroupWord, derive_meridian_trace, random_word, relation_entries,
                             sample_curve_points, specialize_z, trace_in_coordinates, trace_poly)

RESULTS = {}
K7 = QuadraticField(-7)
Y = ("Y",)


def verdict(number: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPT {number:2d} {name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    RESULTS[number] = line
    print("\n" + line)
    assert ok, line


@pytest.fixture(scope="module", autouse=True)
def summary():
    yield
    print("\n" + "\n".join(RESULTS[k] for k in sorted(RESULTS)))
    print(f"ACCEPT summary: {sum('PASS' in v for v in RESULTS.values())}/{len(RESULTS)} passed")


def test_01_q_derivation(fx):
    q = derive_meridian_trace(fx.presentation("L11n106").word("m0"))
    verdict(1, "Q derivation", format_expr(q) == format_expr(fx.poly("Q")), f"{len(q)} terms")


def test_02_elimination(elimination_report):
    rep = elimination_report
    degs = " ".join(f"{v}={d}" for v, d in rep.cofactor_degrees.items())
    verdict(2, "elimination divisible by R", rep.divisible, f"sign={rep.sign:+d} cofactor {degs}")


def test_03_reciprocal_lift(fx):
    S = fx.poly("S")
    ok = format_expr(reciprocal_lift(fx.poly("R"), 8)) == format_expr(S) and is_palindromic(S, "X", 16)
    verdict(3, "reciprocal lift and palindromy", ok)


def test_04_factorization_at_minus_two(R, fx):
    target = R.specialize({"t": -2}).with_vars(Y)
    claims = fx.factors("R_minus2")
    fc = verify_factorization(claims, target)
    has = any(format_expr(f) == "4*Y^2 - 17*Y + 22" for f, _ in claims)
    quad = parse_poly("4*Y^2 - 17*Y + 22", Y)
    verdict(4, "R(-2,Y) factorization", fc.equal and has and divides(quad, target) is not None,
            f"sign={fc.sign:+d}")


def test_05_discrete_faithful_point(R):
    verdict(5, "R(-2, (17+3*sqrt(-7))/8) = 0", R.evaluate({"t": -2, "Y": K7.element(17, 3, 8)}, K7) == 0)


def test_06_table_regression(S, fx):
    rows = fx.table()
    bad = []
    for m, p in rows:
        cert = specialize_irreducible_Q(stretch(S, "X", m), SpecializationIdeal("X", 2, p))
        if cert.verdict != CERTIFIED:
            bad.append(m)
    verdict(6, "certificate table", len(rows) == 24 and not bad, f"{len(rows)} rows, failing {bad}")


def test_07_newton_and_absolute_irreducibility(S, fx):
    polys_ok = all((0, 1) in (np := newton_polygon(stretch(S, "X", m))).vertices and np.vertex_gcd() == 1
                   for m in range(1, 25))
    rep = dzannier_driver(S, 24, name="S", preferred={m: [(2, p)] for m, p in fx.table()})
    certified = sum(e.ok for e in rep.entries)
    verdict(7, "Newton polygon and absolute irreducibility", polys_ok and certified == 24,
            f"{certified}/24 certified")


def test_08_cyclotomic_units():
    odd = range(3, 200, 2)
    units0 = all(unit_2cos_shift(d, 0).is_unit for d in odd)
    units2 = all(unit_2cos_shift(d, 2).is_unit == (len(primefactors(d)) != 1) for d in odd)
    x = sympy.Symbol("x")
    product_ok = True
    for d in range(1, 201):
        phis = [cyclotomic(e) for e in sympy.divisors(d)]
        prod = MultiPoly.const(1, ("x",))
        for f in phis:
            prod = prod * f
        product_ok &= prod == parse_poly(f"x^{d} - 1", ("x",))
        ref = sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs()[::-1]
        product_ok &= [cyclotomic(d).terms.get((i,), 0) for i in range(len(ref))] == ref
    verdict(8, "cyclotomic units and product identity", units0 and units2 and product_ok)


def test_09_r1(fx, R):
    R1 = fx.poly("R1")
    claims = fx.factors("R1_2")
    fc = verify_factorization(claims, R1.specialize({"t": 2}).with_vars(Y))
    quartic = any(format_expr(f) == "8*Y^4 - 52*Y^3 + 132*Y^2 - 153*Y + 68" for f, _ in claims)
    lc = R1.leading_coeff_in("Y")
    ok = (fc.equal and quartic and len(claims) == 3 and lc == parse_poly("t^3", lc.vars)
          and integral_specialization_verdict(R1, True) == ALL_INTEGRAL
          and integral_specialization_verdict(R, True) == NO_CONCLUSION)
    verdict(9, "R1 factorization and integrality verdicts", ok)


def test_10_m137(fx):
    P = fx.poly("m137_P")
    s = MultiPoly.var("s", P.vars)
    expanded_i = (s + 1) ** 2 * (s - 2) == s ** 3 - 3 * s - 2
    expanded_ii = (s + 1) * (s + 2) * (s - 2) == -(4 + 4 * s - s ** 2 - s ** 3)
    rep = m137_checks(P, str(fx.presentation("m137").relators[0]), fx.matrices("m137"))
    units = {d: m137_unit_report(d) for d in (9, 10, 14)}
    ok = (expanded_i and expanded_ii and rep.passed and units[9].obstructed
          and not units[10].obstructed and not units[14].obstructed)
    verdict(10, "m137 exact checks", ok,
            f"t^2 sign={rep.check_ii_sign:+d} relator sign={rep.relator_sign:+d}")


def test_11_alexander(fx):
    delta = fx.poly("alexander")
    shape = all((r := alexander_report(delta, d)).degree == d - 1 and r.lead != 0 for d in range(3, 22, 2))
    lead3 = abs(alexander_report(delta, 3).lead) == 49
    nontrivial = not any(is_trivial_alexander(branched_cover_alexander(delta, d)) for d in range(3, 100, 2))
    torres = torres_check(delta)
    ok = shape and lead3 and nontrivial and torres.ok and str(torres.quotient) == TORRES_QUOTIENT
    verdict(11, "branched-cover Alexander polynomials", ok)


def test_12_integrality():
    vs = [integrality(K7.element(17, 3, 8)), integrality(K7.element(13, 7, 8))]
    ok = all(not v.integral and v.certifying_primes == {2} for v in vs)
    verdict(12, "non-integrality certified by 2", ok)


def _brute_irreducible(f, p):
    n = ff.deg(f)
    return n > 0 and not any(not ff.rem(f, list(t) + [1], p)
                             for d in range(1, n // 2 + 1) for t in itertools.product(range(p), repeat=d))


def _eval_fp2(f, x, y):
    total = GFp2(0, 0, y.p, y.n)
    for (i, j), c in f.terms.items():
        total = total + (y ** j) * (pow(x, i, y.p) * c)
    return total


def test_13_property_suites(fx, S):
    rng = random.Random(13)
    failures = []

    # cross-engine traces
    words = [GroupWord(l) for n in range(6) for l in itertools.product("abAB", repeat=n)]
    words += [random_word(rng, rng.randint(6, 12)) for _ in range(200)]
    if not all(trace_in_coordinates(w) == specialize_z(trace_poly(w)).with_vars(("X", "Y")) for w in words):
        failures.append("traces")

    # resultant algorithms
    for _ in range(40):
        f, g = (MultiPoly(("X", "Y"), {(rng.randint(1, 4), rng.randint(0, 3)): rng.randint(1, 9),
                                        (0, rng.randint(0, 3)): rng.randint(-9, 9)}) for _ in range(2))
        if resultant_bareiss(f, g, "X") != resultant_modular(f, g, "X"):
            failures.append("resultant")
            break

    # irreducibility ladder
    for p in (2, 3, 5, 7):
        for n in range(1, 5):
            for tail in itertools.product(range(p), repeat=n):
                f = list(tail) + [1]
                if ff.is_irreducible(f, p) != _brute_irreducible(f, p):
                    failures.append(f"ladder p={p}")

    # stretch / vertex commutation
    for m in range(1, 8):
        if set(newton_polygon(stretch(S, "X", m)).vertices) != {(m * i, j) for i, j in newton_polygon(S).vertices}:
            failures.append(f"stretch m={m}")

    # relation entries vanish on sampled P-curve points
    pres = fx.presentation("L11n106")
    entries = relation_entries(*(pres.word(f"w{i}") for i in range(1, 5)))
    for p in (101, 163):
        pts = sample_curve_points(fx.poly("P"), p, 4, seed=p)
        if not pts or any(not _eval_fp2(e, x0, y0).is_zero() for x0, y0, _ in pts for e in entries):
            failures.append(f"relation p={p}")

    verdict(13, "property suites", not failures, ", ".join(failures))
