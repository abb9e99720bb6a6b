"""Integrality verdicts, factorization checks and the m137 exact checks."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from sympy.ntheory import isprime, primefactors

from .domains import QuadElement, QuadraticField
from .elimination import divides
from .poly import MultiPoly, content_primitive, format_expr
from .words import GroupWord, parse_word

ALL_INTEGRAL = "all roots integral"
NO_CONCLUSION = "no conclusion"


class CertifyError(ValueError):
    pass


def _as_quad(e) -> tuple:
    """``(r, s, q, D)`` for a quadratic element or a rational."""
    if isinstance(e, QuadElement):
        return e.r, e.s, e.q, e.D
    x = Fraction(e)
    return x.numerator, 0, x.denominator, None


def minimal_polynomial(e, var: str = "Y") -> MultiPoly:
    """Primitive integer minimal polynomial with positive leading coefficient."""
    r, s, q, D = _as_quad(e)
    Y = MultiPoly.var(var, (var,))
    lin = Y.scale(q) - r
    f = lin if s == 0 else lin * lin - s * s * D
    _, prim = content_primitive(f)
    if prim.leading_term()[1] < 0:
        prim = -prim
    return prim


def describe(e) -> str:
    if isinstance(e, QuadElement):
        return str(e) if e.s else str(Fraction(e.r, e.q))
    return str(Fraction(e))


@dataclass(frozen=True)
class IntegralityVerdict:
    element: str
    minpoly: MultiPoly
    integral: bool
    certifying_primes: frozenset

    def line(self) -> str:
        primes = ",".join(str(p) for p in sorted(self.certifying_primes))
        return (f"INTEGRALITY {self.element} minpoly={format_expr(self.minpoly)} "
                f"integral={'yes' if self.integral else 'no'} primes={{{primes}}}")


def integrality(e) -> IntegralityVerdict:
    m = minimal_polynomial(e)
    lead = m.leading_term()[1]
    primes = frozenset(primefactors(lead))
    return IntegralityVerdict(describe(e), m, lead == 1, primes)


def integral_specialization_verdict(f: MultiPoly, t0_unit: bool, t: str = "t", y: str = "Y") -> str:
    """Integrality of the roots in ``y`` after specializing ``t`` at a point.

    The roots are integral when the leading ``y``-coefficient is ``+-t^k``
    and ``t`` lands on a unit (``k = 0`` needs no hypothesis).
    """
    if f.is_zero():
        raise CertifyError("zero polynomial")
    lc = f.leading_coeff_in(y)
    if len(lc.terms) != 1:
        return NO_CONCLUSION
    (e, c), = lc.terms.items()
    if abs(c) != 1:
        return NO_CONCLUSION
    k = e[lc.index(t)] if t in lc.vars else 0
    if any(x for v, x in zip(lc.vars, e) if v != t):
        return NO_CONCLUSION
    return ALL_INTEGRAL if k == 0 or t0_unit else NO_CONCLUSION


@dataclass(frozen=True)
class FactorizationCheck:
    equal: bool
    sign: int
    residual: MultiPoly | None

    def line(self, label: str) -> str:
        if self.equal:
            return f"FACTORIZATION {label} equal sign={self.sign:+d}"
        return f"FACTORIZATION {label} mismatch residual={self.residual}"


def verify_factorization(claims, target: MultiPoly) -> FactorizationCheck:
    """Multiply ``[(factor, multiplicity), ...]`` and compare to ``target`` up to sign."""
    prod = MultiPoly.const(1, target.vars, target.domain)
    for factor, mult in claims:
        prod = prod * factor ** mult
    if prod == target:
        return FactorizationCheck(True, 1, None)
    if prod == -target:
        return FactorizationCheck(True, -1, None)
    q = divides(prod, target)
    residual = q if q is not None else target - prod
    return FactorizationCheck(False, 0, residual)


# ---------------------------------------------------------------- m137

Mat = tuple  # (a, b, c, d) row-major


def mat_mul(m: Mat, n: Mat) -> Mat:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_inv(m: Mat) -> Mat:
    a, b, c, d = m
    det = a * d - b * c
    if det != 1:
        raise CertifyError(f"matrix determinant is {det}, expected 1")
    return (d, -b, -c, a)


def evaluate_word(word: GroupWord, images: dict) -> Mat:
    gens = {g: images[g] for g in images}
    invs = {g.upper(): mat_inv(m) for g, m in gens.items()}
    one = next(iter(gens.values()))[0] * 0 + 1
    out = (one, one * 0, one * 0, one)
    for letter in word.letters:
        out = mat_mul(out, gens[letter] if letter in gens else invs[letter])
    return out


def projective_identity_sign(m: Mat) -> int:
    """``+1`` or ``-1`` when ``m = +-I``, else ``0``."""
    a, b, c, d = m
    if b != 0 or c != 0 or a != d:
        return 0
    if a == 1:
        return 1
    if a == -1:
        return -1
    return 0


def parse_matrices(text: str) -> tuple:
    """``matrices v1`` file: a domain line and ``name: e11, e12, e21, e22`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "matrices v1":
        raise CertifyError("expected 'matrices v1' header")
    m = re.fullmatch(r"domain:\s*Quad:(-?\d+)", lines[1]) if len(lines) > 1 else None
    if not m:
        raise CertifyError("expected 'domain: Quad:<D>' line")
    dom = QuadraticField(int(m.group(1)))
    out = {}
    for ln in lines[2:]:
        name, _, body = ln.partition(":")
        entries = [dom.parse_coeff(x.strip()) for x in body.split(",")]
        if len(entries) != 4:
            raise CertifyError(f"matrix {name!r} needs 4 entries")
        out[name.strip()] = tuple(entries)
    return dom, out


@dataclass
class M137Report:
    check_i: bool
    check_ii_sign: int
    relator_sign: int
    lines: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.check_i and self.check_ii_sign != 0 and self.relator_sign != 0


def m137_checks(P: MultiPoly, relator: str, matrices: dict, s: str = "s", t: str = "t") -> M137Report:
    """Exact checks on the m137 curve coefficients and the relator."""
    sv = MultiPoly.var(s, P.vars)
    t_coeffs = P.coeffs_in(t)
    lead = t_coeffs.get(4, P.zero())
    mid = t_coeffs.get(2, P.zero())
    lead_claim = (sv + 1) ** 2 * (sv - 2)
    check_i = lead_claim == lead
    fc = verify_factorization([(sv + 1, 1), (sv + 2, 1), (sv - 2, 1)], mid)
    sign_ii = fc.sign if fc.equal else 0
    word = parse_word(relator, tuple(matrices))
    rsign = projective_identity_sign(evaluate_word(word, matrices))
    rep = M137Report(check_i, sign_ii, rsign)
    rep.lines = [
        f"M137 (s+1)^2*(s-2) = t^4 coefficient: {'yes' if check_i else 'no'}",
        f"M137 (s+1)*(s+2)*(s-2) = t^2 coefficient: "
        + (f"yes sign={sign_ii:+d}" if sign_ii else "no"),
        f"M137 relator {relator} = " + ({1: "+I", -1: "-I"}.get(rsign, "not +-I")),
    ]
    return rep


# ---------------------------------------------------------------- knot tables

KNOT_NAME = re.compile(r"^(\d+_\d+|1[12][an]\d+)$")


@dataclass(frozen=True)
class KnotTableReport:
    total: int
    by_prime_set: dict
    bad_names: tuple
    bad_primes: tuple
    duplicates: tuple

    @property
    def valid(self) -> bool:
        return not (self.bad_names or self.bad_primes or self.duplicates)

    def line(self) -> str:
        return (f"KNOTS total={self.total} p2={self.by_prime_set.get((2,), 0)} "
                f"p3={self.by_prime_set.get((3,), 0)} "
                f"other={self.total - self.by_prime_set.get((2,), 0) - self.by_prime_set.get((3,), 0)} "
                f"valid={'yes' if self.valid else 'no'}")


def parse_knot_table(text: str) -> list:
    """``knots v1``: ``<name> <p1,p2,...>`` per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "knots v1":
        raise CertifyError("expected 'knots v1' header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CertifyError(f"bad knot line {ln!r}")
        rows.append((parts[0], tuple(int(p) for p in parts[1].split(","))))
    return rows


def validate_knot_table(rows) -> KnotTableReport:
    counts: dict = {}
    for _, primes in rows:
        counts[primes] = counts.get(primes, 0) + 1
    names = [n for n, _ in rows]
    dups = tuple(sorted({n for n in names if names.count(n) > 1}))
    bad_names = tuple(n for n in names if not KNOT_NAME.match(n))
    bad_primes = tuple(n for n, ps in rows if not ps or not all(isprime(p) for p in ps))
    return KnotTableReport(len(rows), counts, bad_names, bad_primes, dups)
