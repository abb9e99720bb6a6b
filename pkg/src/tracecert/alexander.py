"""Alexander polynomials of cyclic branched-cover knots as exact resultants."""
from __future__ import annotations

from dataclasses import dataclass

from .domains import ZZ
from .elimination import divides, resultant
from .poly import MultiPoly

TORRES_QUOTIENT = "v^4 - 5*v^3 + 7*v^2 - 5*v + 1"


class AlexanderError(ValueError):
    pass


def _phi_prime(d: int, var: str, vars) -> MultiPoly:
    """``(v^d - 1)/(v - 1) = 1 + v + ... + v^(d-1)``."""
    return MultiPoly.from_univariate([1] * d, var, vars)


def _root_product(g: MultiPoly, d: int, var: str) -> MultiPoly:
    """``prod g(zeta)`` over the d-th roots of unity other than 1.

    ``Res(Phi', g)`` with ``Phi'`` monic is exactly this product.
    """
    return resultant(_phi_prime(d, var, g.vars), g, var)


def branched_cover_alexander(delta: MultiPoly, d: int, cover_var: str = "v") -> MultiPoly:
    """``prod_{i=1}^{d-1} delta(u, zeta_d^i)`` as an integer polynomial in the other variable."""
    if d < 1:
        raise AlexanderError(f"d must be >= 1, got {d}")
    rest = tuple(v for v in delta.vars if v != cover_var)
    if delta.is_zero():
        raise AlexanderError("zero Alexander polynomial")
    if d == 1:
        return MultiPoly.const(1, rest, ZZ)
    if delta.degree(cover_var) <= 0:
        # constant in v: the product is just a (d-1)-th power
        return (delta ** (d - 1)).with_vars(rest)
    return _root_product(delta, d, cover_var).with_vars(rest)


def leading_coeff_product(d: int) -> int:
    """``prod zeta^i (zeta^i - 2)(zeta^(3i) - zeta^i + 1)`` over ``i = 1..d-1``."""
    if d < 2:
        raise AlexanderError(f"d must be >= 2, got {d}")
    v = MultiPoly.var("v", ("v",))
    out = 1
    for g in (v, v - 2, v ** 3 - v + 1):
        out *= _root_product(g, d, "v").constant_term()
    return out


def is_trivial_alexander(f: MultiPoly) -> bool:
    """True iff ``f = +-u^k``."""
    if f.is_zero():
        raise AlexanderError("zero polynomial")
    return len(f.terms) == 1 and abs(next(iter(f.terms.values()))) == 1


@dataclass(frozen=True)
class TorresResult:
    quotient: MultiPoly | None
    value_at_one: int

    @property
    def ok(self) -> bool:
        return self.quotient is not None and str(self.quotient) == TORRES_QUOTIENT


def torres_check(delta: MultiPoly, first: str = "u", second: str = "v") -> TorresResult:
    """Divide ``delta(1, v)`` by ``v + 1``.

    A linking number of 2 forces this factor; the quotient is the knotted
    component's Alexander polynomial.
    """
    at_one = delta.specialize({first: 1})
    v = MultiPoly.var(second, at_one.vars)
    q = divides(v + 1, at_one)
    return TorresResult(q, at_one.evaluate({second: 1}))


@dataclass(frozen=True)
class AlexanderReport:
    d: int
    polynomial: MultiPoly
    lead: int
    trivial: bool

    @property
    def degree(self) -> int:
        return self.polynomial.total_degree()

    @property
    def flagged_even(self) -> bool:
        return self.d % 2 == 0

    def line(self) -> str:
        s = (f"ALEX d={self.d} degree={self.degree} lead={self.lead} "
             f"trivial={'yes' if self.trivial else 'no'}")
        if self.flagged_even:
            s += " note=even-d-not-a-knot"
        return s


def alexander_report(delta: MultiPoly, d: int) -> AlexanderReport:
    f = branched_cover_alexander(delta, d)
    lead = f.leading_term()[1] if not f.is_zero() else 0
    return AlexanderReport(d, f, lead, False if f.is_zero() else is_trivial_alexander(f))
