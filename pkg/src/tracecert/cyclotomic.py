"""Cyclotomic polynomials and unit detection through integer norms.

Units are never detected inside a cyclotomic field; every question reduces
to an integer norm computed as a resultant against a cyclotomic polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy.ntheory import divisors, primefactors

from .domains import ZZ
from .elimination import exact_div, resultant
from .poly import MultiPoly


class CyclotomicError(ValueError):
    pass


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple:
    x = MultiPoly.var("x", ("x",))
    num = x ** d - 1
    for e in divisors(d)[:-1]:
        num = exact_div(num, MultiPoly.from_univariate(_cyclotomic_coeffs(e), "x"))
    return tuple(num.univariate_coeffs("x"))


def cyclotomic(d: int, var: str = "x") -> MultiPoly:
    """``Phi_d`` from ``x^d - 1 = prod_{e | d} Phi_e(x)`` by exact division."""
    if d < 1:
        raise CyclotomicError(f"cyclotomic index must be >= 1, got {d}")
    return MultiPoly.from_univariate(_cyclotomic_coeffs(d), var)


def norm_of(g: MultiPoly, d: int) -> int:
    """``prod g(zeta)`` over the primitive d-th roots of unity."""
    if d < 1:
        raise CyclotomicError(f"cyclotomic index must be >= 1, got {d}")
    var = g.vars[0]
    if len(g.vars) != 1:
        raise CyclotomicError("norm_of expects a univariate polynomial")
    if g.is_zero():
        return 0
    phi = cyclotomic(d, var)
    if g.is_constant():
        return g.constant_term() ** (len(phi.univariate_coeffs()) - 1)
    return resultant(phi, g, var).constant_term()


def prime_power(d: int) -> bool:
    if d < 2:
        raise CyclotomicError(f"prime_power needs d >= 2, got {d}")
    return len(primefactors(d)) == 1


@lru_cache(maxsize=None)
def _real_minpoly_coeffs(n: int) -> tuple:
    from .words import symmetrize

    phi = cyclotomic(n)
    half = (len(phi.univariate_coeffs()) - 1) // 2
    lau = MultiPoly(("x",), {(k - half,): c for (k,), c in phi.terms.items()}, ZZ, laurent=True)
    return tuple(symmetrize(lau, ("t",)).univariate_coeffs("t"))


def real_cyclotomic_minpoly(n: int, var: str = "t") -> MultiPoly:
    """Minimal polynomial of ``2cos(2pi/n)`` (n >= 3), from the palindromic ``Phi_n``."""
    if n < 3:
        raise CyclotomicError("2cos(2pi/n) is rational for n < 3")
    return MultiPoly.from_univariate(_real_minpoly_coeffs(n), var)


@dataclass(frozen=True)
class UnitVerdict:
    description: str
    norm: int
    full_norm: int
    is_unit: bool


def unit_2cos_shift(n: int, c: int) -> UnitVerdict:
    """Unit status of ``2cos(2pi/n) - c``.

    ``norm`` is taken down to Q from the real subfield Q(cos 2pi/n);
    ``full_norm`` is the norm from Q(zeta_n), obtained as
    ``norm_of(x^2 - c x + 1) / norm_of(x)``.  They satisfy ``full = norm^2``.
    """
    if n < 3:
        raise CyclotomicError(f"need n >= 3, got {n}")
    x = MultiPoly.var("x", ("x",))
    full = norm_of(x * x - x.scale(c) + 1, n) // norm_of(x, n)
    psi = real_cyclotomic_minpoly(n)
    deg = psi.degree("t")
    norm = (-1) ** deg * psi.evaluate({"t": c})
    if norm * norm != full:
        raise CyclotomicError(f"norm mismatch for n={n}, c={c}: {norm}^2 != {full}")
    return UnitVerdict(f"2cos(2pi/{n})" + (f" - {c}" if c > 0 else f" + {-c}" if c < 0 else ""), norm, full, abs(norm) == 1)


@dataclass(frozen=True)
class M137UnitReport:
    d: int
    order: int
    s_plus_1: UnitVerdict
    s_minus_2: UnitVerdict

    @property
    def obstructed(self) -> bool:
        return not (self.s_plus_1.is_unit and self.s_minus_2.is_unit)

    def conclusion(self) -> str:
        if self.obstructed:
            return "conditional: integral trace obstructed"
        return "conditional: integral trace not obstructed"

    def line(self) -> str:
        return (f"UNITS d={self.d} order={self.order} s_plus_1={self.s_plus_1.norm} "
                f"s_minus_2={self.s_minus_2.norm} obstruction={'yes' if self.obstructed else 'no'}")


def m137_unit_report(d: int) -> M137UnitReport:
    """Unit status of ``s + 1`` and ``s - 2`` at ``s = 2cos(2pi/n)``.

    ``n = d`` for odd ``d`` and ``n = 2d`` for even ``d``.
    """
    if d < 3:
        raise CyclotomicError(f"need d >= 3, got {d}")
    order = d if d % 2 else 2 * d
    return M137UnitReport(d, order, unit_2cos_shift(order, -1), unit_2cos_shift(order, 2))
