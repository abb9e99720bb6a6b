"""Resultants, exact division and bivariate gcds over the integers.

Two resultant algorithms are provided and are expected to agree exactly:

* :func:`resultant_bareiss` runs fraction-free elimination on the Sylvester
  matrix with polynomial entries;
* :func:`resultant_modular` evaluates at points modulo word-size primes,
  takes univariate resultants over F_p, interpolates, and reconstructs the
  integer coefficients by Chinese remaindering against an a-priori bound.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd as igcd

from sympy.ntheory import nextprime

from . import finite_fields as ff
from .domains import ZZ
from .poly import MultiPoly, PolyError, content_primitive, normalize_sign

log = logging.getLogger(__name__)

PRIME_FLOOR = 2 ** 30


class EliminationError(ValueError):
    pass


# ---------------------------------------------------------------- division

def divides(f: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """Quotient ``g / f`` when ``f`` divides ``g`` exactly, else ``None``."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f._check_compatible(g)
    dom = f.domain
    ef, cf = f.leading_term()
    fterms = list(f.terms.items())
    r = dict(g.terms)
    q: dict = {}
    key = lambda e: (sum(e), e)
    while r:
        er = max(r, key=key)
        cr = r[er]
        shift = tuple(a - b for a, b in zip(er, ef))
        if any(k < 0 for k in shift) and not f.laurent:
            return None
        c = dom.div(cr, cf)
        if c is None:
            return None
        q[shift] = c
        for e, k in fterms:
            ne = tuple(a + b for a, b in zip(e, shift))
            v = dom.sub(r.get(ne, dom.convert(0)), dom.mul(k, c))
            if v:
                r[ne] = v
            else:
                r.pop(ne, None)
    return MultiPoly(f.vars, q, dom, f.laurent or g.laurent, _clean=True)


def exact_div(g: MultiPoly, f: MultiPoly) -> MultiPoly:
    q = divides(f, g)
    if q is None:
        raise EliminationError("inexact division")
    return q


# ---------------------------------------------------------------- Sylvester

@dataclass(frozen=True)
class SylvesterMatrix:
    rows: tuple
    var: str

    @property
    def dimension(self) -> int:
        return len(self.rows)


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> SylvesterMatrix:
    m, n = f.degree(var), g.degree(var)
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    zero = f.zero()
    size = m + n
    rows = []
    for k in range(n):
        row = [zero] * size
        for i in range(m + 1):
            row[k + i] = fc.get(m - i, zero)
        rows.append(tuple(row))
    for k in range(m):
        row = [zero] * size
        for j in range(n + 1):
            row[k + j] = gc.get(n - j, zero)
        rows.append(tuple(row))
    return SylvesterMatrix(tuple(rows), var)


def bareiss_det(rows) -> MultiPoly:
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        raise EliminationError("empty matrix")
    one = M[0][0].one()
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[0][0].zero()
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = exact_div(num, prev) if prev != one else num
            M[i][k] = piv.zero()
        prev = piv
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def _check_inputs(f: MultiPoly, g: MultiPoly, var: str):
    f._check_compatible(g)
    if f.domain is not ZZ:
        raise EliminationError("resultants are computed over the integers")
    if f.is_zero() or g.is_zero():
        raise EliminationError("resultant of a zero polynomial")
    if f.degree(var) <= 0 and g.degree(var) <= 0:
        raise EliminationError(f"both inputs have degree zero in {var}")


def resultant_bareiss(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    _check_inputs(f, g, var)
    return bareiss_det(sylvester_matrix(f, g, var).rows)


# ---------------------------------------------------------------- modular

def norm1(f: MultiPoly) -> int:
    return sum(abs(c) for c in f.terms.values())


def _interpolate(xs, ys, p) -> list:
    """Coefficients (low first) of the polynomial through ``(xs, ys)`` mod p."""
    n = len(xs)
    c = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    coeffs = [c[-1]]
    for k in range(n - 2, -1, -1):
        # coeffs * (x - xs[k]) + c[k]
        new = [0] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            new[i + 1] = (new[i + 1] + a) % p
            new[i] = (new[i] - a * xs[k]) % p
        new[0] = (new[0] + c[k]) % p
        coeffs = new
    return coeffs


def _specialize_mod(terms: dict, idx: int, val: int, p: int) -> dict:
    out: dict = {}
    powcache = {}
    for e, c in terms.items():
        k = e[idx]
        if k not in powcache:
            powcache[k] = pow(val, k, p)
        ne = e[:idx] + (0,) + e[idx + 1:]
        out[ne] = (out.get(ne, 0) + c * powcache[k]) % p
    return {e: c for e, c in out.items() if c}


def _deg_at(terms: dict, vi: int) -> int:
    return max((e[vi] for e in terms), default=-1)


def _res_mod_p(fd, gd, vi, free, bounds, p, fdeg, gdeg):
    """Resultant mod p as a dict over the full exponent tuple (var slot = 0)."""
    if not free:
        fl = [0] * (fdeg + 1)
        gl = [0] * (gdeg + 1)
        for e, c in fd.items():
            fl[e[vi]] = c
        for e, c in gd.items():
            gl[e[vi]] = c
        r = ff.resultant(fl, gl, p)
        nv = len(next(iter(fd)))
        return {(0,) * nv: r} if r else {}
    w = free[-1]
    rest = free[:-1]
    need = bounds[w] + 1
    xs, vals = [], []
    point = 0
    while len(xs) < need:
        point += 1
        if point >= p:
            raise EliminationError("ran out of evaluation points")
        fs = _specialize_mod(fd, w, point, p)
        gs = _specialize_mod(gd, w, point, p)
        # leading coefficients in var must survive the specialization
        if _deg_at(fs, vi) != fdeg or _deg_at(gs, vi) != gdeg:
            continue
        xs.append(point)
        vals.append(_res_mod_p(fs, gs, vi, rest, bounds, p, fdeg, gdeg))
    monos = set()
    for v in vals:
        monos.update(v)
    out = {}
    for mono in monos:
        ys = [v.get(mono, 0) for v in vals]
        coeffs = _interpolate(xs, ys, p)
        for k, c in enumerate(coeffs):
            if c:
                e = mono[:w] + (k,) + mono[w + 1:]
                out[e] = c
    return out


def resultant_modular(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    _check_inputs(f, g, var)
    vi = f.index(var)
    fdeg, gdeg = f.degree(var), g.degree(var)
    free = [i for i, v in enumerate(f.vars) if v != var]
    bounds = {i: gdeg * max(f.degree(f.vars[i]), 0) + fdeg * max(g.degree(g.vars[i]), 0) for i in free}
    free = [i for i in free if bounds[i] > 0]
    bound = norm1(f) ** gdeg * norm1(g) ** fdeg
    lcf, lcg = f.leading_coeff_in(var), g.leading_coeff_in(var)
    modulus = 1
    acc: dict = {}
    p = PRIME_FLOOR
    nprimes = 0
    while modulus <= 2 * bound:
        p = nextprime(p)
        if all(c % p == 0 for c in lcf.terms.values()) or all(c % p == 0 for c in lcg.terms.values()):
            continue
        fd = {e: c % p for e, c in f.terms.items() if c % p}
        gd = {e: c % p for e, c in g.terms.items() if c % p}
        rp = _res_mod_p(fd, gd, vi, free, bounds, p, fdeg, gdeg)
        # CRT merge
        inv = pow(modulus % p, -1, p)
        keys = set(acc) | set(rp)
        for e in keys:
            a = acc.get(e, 0)
            b = rp.get(e, 0)
            t = (b - a) * inv % p
            acc[e] = a + modulus * t
        modulus *= p
        nprimes += 1
    half = modulus // 2
    terms = {}
    for e, c in acc.items():
        c = c - modulus if c > half else c
        if c:
            terms[e] = c
    log.debug("modular resultant: %d primes, bounds %s", nprimes, bounds)
    return MultiPoly(f.vars, terms, ZZ)


def resultant(f: MultiPoly, g: MultiPoly, var: str, method: str = "modular") -> MultiPoly:
    """Sylvester resultant with ``resultant(x - u, x - v, x) = u - v``.

    ``method`` is ``"modular"``, ``"bareiss"`` or ``"both"`` (computes both
    and raises if they differ).
    """
    if method == "modular":
        return resultant_modular(f, g, var)
    if method == "bareiss":
        return resultant_bareiss(f, g, var)
    if method == "both":
        a, b = resultant_modular(f, g, var), resultant_bareiss(f, g, var)
        if a != b:
            raise EliminationError("resultant algorithms disagree")
        return a
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------- gcd

def _int_gcd_poly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    c = igcd(igcd(*f.terms.values()) if f.terms else 0, igcd(*g.terms.values()) if g.terms else 0)
    return MultiPoly.const(abs(c), f.vars, f.domain)


def _content_in(f: MultiPoly, var: str) -> MultiPoly:
    parts = list(f.coeffs_in(var).values())
    c = parts[0]
    for q in parts[1:]:
        c = _gcd(c, q)
        if c.is_constant() and abs(c.constant_term()) == 1:
            break
    return c


def _prem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    n = b.degree(var)
    lb = b.leading_coeff_in(var)
    i = a.index(var)
    r = a
    while not r.is_zero() and r.degree(var) >= n:
        k = r.degree(var) - n
        lr = r.leading_coeff_in(var)
        shift = tuple(k if j == i else 0 for j in range(len(a.vars)))
        r = lb * r - (lr * b).mul_monomial(shift)
    return r


def _primitive_in(f: MultiPoly, var: str) -> MultiPoly:
    return exact_div(f, _content_in(f, var))


def _gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return normalize_sign(g)
    if g.is_zero():
        return normalize_sign(f)
    eff = [v for v in f.vars if v in f.effective_vars() or v in g.effective_vars()]
    if not eff:
        return _int_gcd_poly(f, g)
    var = eff[0]
    if f.degree(var) <= 0 or g.degree(var) <= 0:
        # var occurs in only one input: gcd lives in the coefficient ring
        h = f if f.degree(var) > 0 else g
        other = g if h is f else f
        return _gcd(_content_in(h, var), other)
    cf, cg = _content_in(f, var), _content_in(g, var)
    c = _gcd(cf, cg)
    a, b = exact_div(f, cf), exact_div(g, cg)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while not b.is_zero() and b.degree(var) > 0:
        r = _prem(a, b, var)
        a, b = b, (r if r.is_zero() else _primitive_in(r, var))
    h = a if b.is_zero() else a.one()
    h = _primitive_in(h, var) if h.degree(var) > 0 else h.one()
    _, h = content_primitive(h)
    return normalize_sign(c * h)


def gcd_bivariate(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Gcd of integer polynomials in at most two effective variables.

    Integer content is kept (``gcd(2X, 4Y) = 2``); the sign is normalized so
    that the canonical leading coefficient is positive.  ``gcd(f, 0)`` is the
    primitive part of ``f``.
    """
    f._check_compatible(g)
    if f.domain is not ZZ:
        raise EliminationError("gcd_bivariate works over the integers")
    if f.is_zero() and g.is_zero():
        raise EliminationError("gcd of two zero polynomials")
    eff = set(f.effective_vars()) | set(g.effective_vars())
    if len(eff) > 2:
        raise EliminationError(f"more than two effective variables: {sorted(eff)}")
    if g.is_zero() or f.is_zero():
        h = f if g.is_zero() else g
        return normalize_sign(content_primitive(h)[1])
    return _gcd(f, g)


# ---------------------------------------------------------------- reporting

@dataclass(frozen=True)
class EliminationReport:
    resultant: MultiPoly
    divisible: bool
    sign: int
    content: int
    cofactor: MultiPoly | None
    cofactor_degrees: dict

    def lines(self) -> list:
        prof = " ".join(f"deg_{v}={d}" for v, d in self.cofactor_degrees.items())
        return [
            f"resultant terms={len(self.resultant)} "
            + " ".join(f"deg_{v}={self.resultant.degree(v)}" for v in self.resultant.vars),
            f"divisible={'yes' if self.divisible else 'no'} sign={self.sign:+d} content={self.content}",
            f"cofactor {prof}" + (f" = {self.cofactor}" if self.cofactor is not None and len(self.cofactor) <= 8 else ""),
        ]


def eliminate_against(f: MultiPoly, g: MultiPoly, var: str, target: MultiPoly,
                      method: str = "modular") -> EliminationReport:
    """Eliminate ``var`` and test divisibility of the result by ``target`` up to sign."""
    res = resultant(f, g, var, method).with_vars(target.vars)
    q = divides(target, res)
    if q is None:
        return EliminationReport(res, False, 0, 0, None, {})
    content, prim = content_primitive(q)
    sign = 1
    _, lc = prim.leading_term()
    if lc < 0:
        sign, prim = -1, -prim
    return EliminationReport(res, True, sign, content, prim,
                             {v: prim.degree(v) for v in prim.vars})
