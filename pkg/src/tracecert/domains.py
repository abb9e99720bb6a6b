"""Exact coefficient domains.

Every domain knows how to coerce Python integers (and its own elements)
into canonical form, how to print a coefficient, and how to do the four
ring/field operations.  Integers and rationals use ``int`` and
``fractions.Fraction``; prime fields use reduced ``int`` residues; quadratic
fields use :class:`QuadElement`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from sympy.ntheory import isprime


class DomainError(ValueError):
    pass


def _squarefree(n: int) -> bool:
    if n in (0, 1):
        return False
    m = abs(n)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


class QuadElement:
    """``(r + s*sqrt(D)) / q`` in lowest terms with ``q > 0``."""

    __slots__ = ("r", "s", "q", "D")

    def __init__(self, r: int, s: int, q: int, D: int):
        if q == 0:
            raise ZeroDivisionError("zero denominator")
        if q < 0:
            r, s, q = -r, -s, -q
        g = gcd(gcd(r, s), q)
        if g > 1:
            r, s, q = r // g, s // g, q // g
        self.r, self.s, self.q, self.D = r, s, q, D

    @classmethod
    def from_rational(cls, x, D: int) -> "QuadElement":
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, D)

    def _lift(self, other):
        if isinstance(other, QuadElement):
            if other.D != self.D:
                raise DomainError(f"mixing sqrt({self.D}) and sqrt({other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement.from_rational(other, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.r * o.q + o.r * self.q, self.s * o.q + o.s * self.q, self.q * o.q, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.r, -self.s, self.q, self.D)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElement(
            self.r * o.r + self.s * o.s * self.D,
            self.r * o.s + self.s * o.r,
            self.q * o.q,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.r, -self.s, self.q, self.D)

    def norm(self) -> Fraction:
        return Fraction(self.r * self.r - self.s * self.s * self.D, self.q * self.q)

    def trace(self) -> Fraction:
        return Fraction(2 * self.r, self.q)

    def inverse(self) -> "QuadElement":
        n = self.r * self.r - self.s * self.s * self.D
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/((r+s√D)/q) = q(r - s√D)/n
        return QuadElement(self.q * self.r, -self.q * self.s, n, self.D)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElement(1, 0, 1, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, QuadElement) else other
        if o is NotImplemented:
            return False
        return (self.r, self.s, self.q, self.D) == (o.r, o.s, o.q, o.D)

    def __hash__(self):
        if self.s == 0:
            return hash(Fraction(self.r, self.q))
        return hash((self.r, self.s, self.q, self.D))

    def __repr__(self):
        return f"QuadElement({self.r}, {self.s}, {self.q}, D={self.D})"

    def __str__(self):
        return format_quad(self)


def format_quad(e: QuadElement) -> str:
    sign = "+" if e.s >= 0 else "-"
    body = f"{e.r}{sign}{abs(e.s)}*sqrt({e.D})"
    return f"({body})" if e.q == 1 else f"({body})/{e.q}"


_QUAD_RE = re.compile(r"^\((-?\d+)([+-])(\d+)\*sqrt\((-?\d+)\)\)(?:/(\d+))?$")


class Domain:
    """Base class; subclasses define element handling."""

    tag: str = ""

    def convert(self, c):
        raise NotImplementedError

    def is_field(self) -> bool:
        return False

    def add(self, a, b):
        return self.convert(a + b)

    def sub(self, a, b):
        return self.convert(a - b)

    def mul(self, a, b):
        return self.convert(a * b)

    def neg(self, a):
        return self.convert(-a)

    def div(self, a, b):
        """Exact division; ``None`` when ``b`` does not divide ``a``."""
        raise NotImplementedError

    def pow(self, a, n: int):
        return self.convert(a ** n)

    def format(self, c) -> str:
        return str(c)

    def parse_coeff(self, text: str):
        raise NotImplementedError

    def header(self) -> str:
        return self.tag

    def __eq__(self, other):
        return type(self) is type(other) and self.header() == other.header()

    def __hash__(self):
        return hash(self.header())

    def __repr__(self):
        return f"<Domain {self.header()}>"


class IntegerRing(Domain):
    tag = "Z"

    def convert(self, c):
        if isinstance(c, bool):
            return int(c)
        if isinstance(c, int):
            return c
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        if isinstance(c, QuadElement) and c.s == 0 and c.q == 1:
            return c.r
        raise DomainError(f"{c!r} is not an integer")

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        return q if r == 0 else None

    def parse_coeff(self, text):
        return int(text)


class RationalField(Domain):
    tag = "Q"

    def is_field(self):
        return True

    def convert(self, c):
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        if isinstance(c, QuadElement) and c.s == 0:
            return Fraction(c.r, c.q)
        raise DomainError(f"{c!r} is not rational")

    def div(self, a, b):
        return Fraction(a) / Fraction(b)

    def format(self, c):
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

    def parse_coeff(self, text):
        return Fraction(text)


class PrimeField(Domain):
    def __init__(self, p: int):
        if not isprime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p

    @property
    def tag(self):
        return f"Fp:{self.p}"

    def is_field(self):
        return True

    def convert(self, c):
        p = self.p
        if isinstance(c, int):
            return c % p
        if isinstance(c, Fraction):
            den = c.denominator % p
            if den == 0:
                raise DomainError(f"denominator of {c} vanishes mod {p}")
            return c.numerator * pow(den, -1, p) % p
        raise DomainError(f"cannot reduce {c!r} mod {p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def pow(self, a, n):
        return pow(a, n, self.p)

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero")
        return a * pow(b, -1, self.p) % self.p

    def parse_coeff(self, text):
        return int(text) % self.p


class CyclotomicResidue(PrimeField):
    """F_p together with a distinguished element of multiplicative order d."""

    def __init__(self, p: int, order: int, root: int | None = None):
        super().__init__(p)
        if (p - 1) % order:
            raise DomainError(f"no element of order {order} in F_{p}")
        self.order = order
        if root is None:
            from sympy.ntheory import primitive_root

            root = pow(primitive_root(p), (p - 1) // order, p)
        if multiplicative_order(root, p) != order:
            raise DomainError(f"{root} does not have order {order} mod {p}")
        self.root = root

    @property
    def tag(self):
        return f"Cyc:{self.p}:{self.order}"


def multiplicative_order(c: int, p: int) -> int:
    from sympy.ntheory import n_order

    return n_order(c % p, p)


class QuadraticField(Domain):
    def __init__(self, D: int):
        if not _squarefree(D):
            raise DomainError(f"{D} is not a squarefree integer != 1")
        self.D = D

    @property
    def tag(self):
        return f"Quad:{self.D}"

    def is_field(self):
        return True

    def sqrt(self) -> QuadElement:
        return QuadElement(0, 1, 1, self.D)

    def element(self, r, s=0, q=1) -> QuadElement:
        return QuadElement(r, s, q, self.D)

    def convert(self, c):
        if isinstance(c, QuadElement):
            if c.D != self.D:
                raise DomainError(f"element of Q(sqrt({c.D})) used in {self.tag}")
            return c
        if isinstance(c, (int, Fraction)):
            return QuadElement.from_rational(c, self.D)
        raise DomainError(f"cannot convert {c!r} into {self.tag}")

    def div(self, a, b):
        return self.convert(a) / self.convert(b)

    def format(self, c):
        return format_quad(self.convert(c))

    def parse_coeff(self, text):
        m = _QUAD_RE.match(text)
        if m:
            r, sign, s, D, q = m.groups()
            if int(D) != self.D:
                raise DomainError(f"sqrt({D}) in {self.tag}")
            s = int(s) if sign == "+" else -int(s)
            return QuadElement(int(r), s, int(q or 1), self.D)
        return QuadElement.from_rational(Fraction(text), self.D)


ZZ = IntegerRing()
QQ = RationalField()


def domain_from_header(text: str) -> Domain:
    text = text.strip()
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    if text.startswith("Quad:"):
        return QuadraticField(int(text[5:]))
    if text.startswith("Cyc:"):
        _, p, d = text.split(":")
        return CyclotomicResidue(int(p), int(d))
    raise DomainError(f"unknown domain {text!r}")
