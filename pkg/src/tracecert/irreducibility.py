"""Irreducibility certificates for bivariate integer polynomials.

Rational irreducibility is certified by specialization: if ``f(a, Y)`` keeps
its full ``Y``-degree and is irreducible over F_p, and the content of ``f`` as
a polynomial in ``Y`` over Z[X] is trivial, then ``f`` is irreducible over Q.
Absolute irreducibility then follows from the Newton polygon test when the
gcd of all vertex coordinates is 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from sympy.ntheory import isprime, nextprime, primitive_root, n_order

from . import finite_fields as ff
from .domains import ZZ
from .poly import MultiPoly, PolyError, integer_content, stretch

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class SpecializationIdeal:
    var: str
    point: int
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise CertificateError(f"{self.p} is not prime")

    def __str__(self):
        return f"({self.var}-{self.point},{self.p})" if self.point >= 0 else f"({self.var}+{-self.point},{self.p})"


@dataclass(frozen=True)
class NewtonPolygon:
    support: frozenset
    vertices: tuple

    def vertex_gcd(self) -> int:
        g = 0
        for i, j in self.vertices:
            g = gcd(g, gcd(i, j))
        return g


@dataclass
class IrreducibilityCertificate:
    name: str
    digest: str
    method: str
    witness: object
    verdict: str
    notes: list = field(default_factory=list)

    def line(self) -> str:
        return f"CERT {self.name} method={self.method} witness={_witness_text(self.witness)} verdict={self.verdict}"


def _witness_text(w) -> str:
    if w is None:
        return "none"
    if isinstance(w, SpecializationIdeal):
        return str(w)
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return "[" + ",".join(f"({i},{j})" for i, j in w) + "]"
    if isinstance(w, dict):
        return ",".join(f"{k}={v}" for k, v in w.items())
    return str(w)


# ---------------------------------------------------------------- F_p

def fp_irreducible(f: MultiPoly) -> bool:
    """Irreducibility of a univariate polynomial over its prime field."""
    p = getattr(f.domain, "p", None)
    if p is None:
        raise CertificateError("fp_irreducible needs a prime-field polynomial")
    if f.is_zero():
        raise CertificateError("zero polynomial")
    return ff.is_irreducible(f.univariate_coeffs(), p)


def _other_var(f: MultiPoly, var: str) -> str:
    others = [v for v in f.vars if v != var]
    if len(others) != 1:
        raise CertificateError(f"expected a bivariate polynomial, got variables {f.vars}")
    return others[0]


def _reduction(f: MultiPoly, var: str, a: int, p: int) -> list:
    main = _other_var(f, var)
    i, j = f.index(var), f.index(main)
    n = f.degree(main)
    out = [0] * (n + 1)
    for e, c in f.terms.items():
        out[e[j]] = (out[e[j]] + c * pow(a, e[i], p)) % p
    return out


def content_is_trivial(f: MultiPoly, var: str, primes: Iterable[int] | None = None) -> tuple:
    """Decide whether ``f`` has trivial content as a polynomial in the other variable.

    Integer content must be 1, and the coefficients (polynomials in ``var``)
    must be coprime over Q.  The latter is certified by a prime ``q`` not
    dividing the leading coefficient of one of them for which the gcd of the
    reductions mod ``q`` is 1.  Returns ``(trivial, witness_prime_or_None)``.
    """
    if integer_content(f) not in (1, -1):
        return False, None
    main = _other_var(f, var)
    parts = [c.univariate_coeffs(var) for c in f.coeffs_in(main).values()]
    if any(len(c) == 1 for c in parts):
        return True, None  # a nonzero integer coefficient bounds the content by the integer content
    parts.sort(key=len)
    base = parts[0]
    primes = primes or prime_stream(3, 60)
    for q in primes:
        if base[-1] % q == 0:
            continue
        g = ff.reduce_coeffs(base, q)
        for other in parts[1:]:
            g = ff.gcd(g, ff.reduce_coeffs(other, q), q)
            if ff.deg(g) == 0:
                return True, q
    return _content_exact(f, var), None


def _content_exact(f: MultiPoly, var: str) -> bool:
    from .elimination import _content_in

    c = _content_in(f, _other_var(f, var))
    return c.is_constant() and abs(c.constant_term()) == 1


def prime_stream(start: int, count: int):
    p = start - 1
    for _ in range(count):
        p = nextprime(p)
        yield p


def specialize_irreducible_Q(f: MultiPoly, ideal: SpecializationIdeal, name: str = "f") -> IrreducibilityCertificate:
    if f.domain is not ZZ:
        raise CertificateError("expected an integer polynomial")
    main = _other_var(f, ideal.var)
    n = f.degree(main)
    red = _reduction(f, ideal.var, ideal.point, ideal.p)
    if red[-1] % ideal.p == 0:
        raise CertificateError(
            f"degree drop: leading {main}-coefficient vanishes mod {ideal}")
    trivial, _ = content_is_trivial(f, ideal.var)
    if not trivial:
        raise CertificateError(f"content of {name} in {main} over Z[{ideal.var}] is not 1")
    ok = n >= 1 and ff.is_irreducible(red, ideal.p)
    return IrreducibilityCertificate(name, f.digest(), "specialization", ideal,
                                     CERTIFIED if ok else INCONCLUSIVE)


def find_certificate(f: MultiPoly, a_candidates: Sequence[int], p_candidates: Iterable[int],
                     var: str = "X", name: str = "f", preferred: Sequence[tuple] = ()) -> IrreducibilityCertificate:
    """First specialization ideal (in the given order) that certifies ``f``.

    ``preferred`` pairs ``(a, p)`` are tried before the ``a x p`` grid.
    """
    main = _other_var(f, var)
    if not a_candidates and not preferred:
        raise CertificateError("empty candidate list")
    p_list = list(p_candidates)
    if not p_list and not preferred:
        raise CertificateError("empty candidate list")
    trivial, witness = content_is_trivial(f, var)
    notes = []
    if not trivial:
        return IrreducibilityCertificate(name, f.digest(), "specialization", None, INCONCLUSIVE,
                                         [f"content in {main} is nontrivial"])
    n = f.degree(main)
    grid = list(preferred) + [(a, p) for a in a_candidates for p in p_list]
    for a, p in grid:
        red = _reduction(f, var, a, p)
        if red[-1] % p == 0:
            notes.append(f"degree drop at ({var}-{a},{p})")
            continue
        if n >= 1 and ff.is_irreducible(red, p):
            cert = IrreducibilityCertificate(name, f.digest(), "specialization",
                                             SpecializationIdeal(var, a, p), CERTIFIED, notes)
            return cert
    notes.append(f"exhausted {len(grid)} candidates")
    return IrreducibilityCertificate(name, f.digest(), "specialization", None, INCONCLUSIVE, notes)


# ---------------------------------------------------------------- Newton polygon

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> tuple:
    """Strict convex-hull vertices in counter-clockwise order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower, upper = [], []
    for pt in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    for pt in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return tuple(lower[:-1] + upper[:-1])


def newton_polygon(f: MultiPoly) -> NewtonPolygon:
    if f.is_zero():
        raise CertificateError("Newton polygon of the zero polynomial")
    if len(f.vars) != 2:
        raise CertificateError("Newton polygons are for bivariate polynomials")
    support = frozenset(f.terms)
    return NewtonPolygon(support, convex_hull(support))


def absolute_irreducibility(f: MultiPoly, q_irreducibility: IrreducibilityCertificate | None,
                            name: str | None = None) -> IrreducibilityCertificate:
    if q_irreducibility is None or q_irreducibility.verdict != CERTIFIED:
        raise CertificateError("absolute irreducibility needs a certified rational-irreducibility input")
    if q_irreducibility.digest != f.digest():
        raise CertificateError("rational certificate belongs to a different polynomial")
    poly = newton_polygon(f)
    g = poly.vertex_gcd()
    return IrreducibilityCertificate(name or q_irreducibility.name, f.digest(), "newton-gcd", poly.vertices,
                                     CERTIFIED if g == 1 else INCONCLUSIVE, [f"vertex gcd {g}"])


# ---------------------------------------------------------------- sweep

DEFAULT_POINTS = (2, 3, -1, 1, 0)


@dataclass
class SweepEntry:
    m: int
    rational: IrreducibilityCertificate
    absolute: IrreducibilityCertificate | None
    has_01_vertex: bool

    @property
    def ok(self) -> bool:
        return self.absolute is not None and self.absolute.verdict == CERTIFIED


@dataclass
class SweepReport:
    name: str
    m_max: int
    entries: list

    @property
    def failing(self) -> list:
        return [e.m for e in self.entries if not e.ok]

    def conclusion(self) -> str | None:
        if self.m_max == 0:
            return None
        if not self.failing:
            return f"hypotheses verified for all m <= {self.m_max}"
        return "hypotheses not verified for m in {" + ",".join(map(str, self.failing)) + "}"

    def lines(self) -> list:
        out = []
        for e in self.entries:
            out.append(e.rational.line())
            if e.absolute is not None:
                out.append(e.absolute.line())
        c = self.conclusion()
        if c:
            out.append(f"SWEEP {self.name} m_max={self.m_max}: {c}")
        return out


def dzannier_driver(f: MultiPoly, m_max: int | None = None, name: str = "f", var: str = "X",
                    preferred: dict | None = None, p_limit: int = 400) -> SweepReport:
    """Check, for m = 1..m_max, that ``f(X^m, Y)`` is absolutely irreducible.

    ``preferred`` maps ``m`` to specialization pairs ``(a, p)`` to try first.
    """
    main = _other_var(f, var)
    if m_max is None:
        m_max = f.degree(main)
    primes = [q for q in prime_stream(3, 200) if q <= p_limit]
    entries = []
    for m in range(1, m_max + 1):
        g = stretch(f, var, m)
        label = f"{name}[{var}^{m}]"
        rat = find_certificate(g, DEFAULT_POINTS, primes, var=var, name=label,
                               preferred=(preferred or {}).get(m, ()))
        absolute = None
        poly = newton_polygon(g)
        corner = (0, 1) if f.vars.index(var) == 0 else (1, 0)
        if rat.verdict == CERTIFIED:
            absolute = absolute_irreducibility(g, rat, label)
        entries.append(SweepEntry(m, rat, absolute, corner in poly.vertices))
    return SweepReport(name, m_max, entries)


# ---------------------------------------------------------------- roots of unity

def certify_root_of_unity_specialization(f: MultiPoly, d: int, p_budget: int = 10000,
                                         max_attempts: int = 25, var: str = "X",
                                         name: str = "f") -> IrreducibilityCertificate:
    """Certify ``f(zeta_d, Y)`` irreducible over Q(zeta_d) via an order-d element of F_p.

    A success at ``(p, c)`` means the reduction modulo a prime above ``p``
    (where ``zeta_d -> c``) is irreducible of full degree.  Failure of every
    attempt is inconclusive, never a refutation.
    """
    if d < 3 or d % 2 == 0:
        raise CertificateError(f"d must be odd and >= 3, got {d}")
    main = _other_var(f, var)
    _, lc = f.leading_term()
    trail = []
    attempts = 0
    p = 1
    while attempts < max_attempts:
        p += d
        if p > p_budget:
            break
        if not isprime(p) or lc % p == 0:
            continue
        g = primitive_root(p)
        base = pow(g, (p - 1) // d, p)
        for k in range(1, d):
            if gcd(k, d) != 1:
                continue
            c = pow(base, k, p)
            if n_order(c, p) != d:
                continue
            attempts += 1
            red = _reduction(f, var, c, p)
            if red[-1] % p == 0:
                trail.append(f"p={p},c={c}:degree-drop")
            elif ff.is_irreducible(red, p):
                trail.append(f"p={p},c={c}:irreducible")
                return IrreducibilityCertificate(name, f.digest(), f"root-of-unity({d})",
                                                 {"d": d, "p": p, "c": c}, CERTIFIED, trail)
            else:
                trail.append(f"p={p},c={c}:reducible")
            if attempts >= max_attempts:
                break
    trail.append(f"exhausted after {attempts} attempts")
    return IrreducibilityCertificate(name, f.digest(), f"root-of-unity({d})", {"d": d}, INCONCLUSIVE, trail)
