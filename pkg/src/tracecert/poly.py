"""Sparse multivariate (and Laurent) polynomials over exact domains.

A :class:`MultiPoly` is an immutable map from exponent tuples to nonzero
coefficients.  Canonical term order is graded-lexicographic, descending, with
respect to the declared variable order; printing and the fixture format both
follow it so that text comparison is polynomial equality.
"""
from __future__ import annotations

import hashlib
from functools import reduce
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from .domains import ZZ, Domain, DomainError, QuadElement

Exps = tuple


class PolyError(ValueError):
    pass


def _grlex_key(e: Exps):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("vars", "domain", "terms", "laurent", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exps, object] | None = None,
                 domain: Domain = ZZ, laurent: bool = False, _clean: bool = False):
        self.vars = tuple(vars)
        self.domain = domain
        self.laurent = laurent
        self._hash = None
        n = len(self.vars)
        if _clean:
            self.terms = dict(terms or {})
            return
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise PolyError(f"exponent {e} does not match variables {self.vars}")
            if not laurent and any(k < 0 for k in e):
                raise PolyError(f"negative exponent {e} outside a Laurent context")
            c = domain.convert(c)
            if c:
                out[e] = c
        self.terms = out

    # construction helpers
    @classmethod
    def const(cls, c, vars: Sequence[str], domain: Domain = ZZ, laurent: bool = False):
        return cls(vars, {(0,) * len(vars): c}, domain, laurent)

    @classmethod
    def var(cls, name: str, vars: Sequence[str], domain: Domain = ZZ, laurent: bool = False):
        vars = tuple(vars)
        if name not in vars:
            raise PolyError(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: 1}, domain, laurent)

    def _new(self, terms, laurent=None, vars=None, domain=None):
        return MultiPoly(vars or self.vars, terms, domain or self.domain,
                         self.laurent if laurent is None else laurent, _clean=True)

    def zero(self):
        return self._new({})

    def one(self):
        return self._new({(0,) * len(self.vars): self.domain.convert(1)})

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise PolyError(f"unknown variable {var!r}") from None

    def degree(self, var: str) -> int:
        i = self.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, var: str) -> int:
        i = self.index(var)
        return min((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.domain.convert(0))

    def coeff(self, exps: Exps):
        return self.terms.get(tuple(exps), self.domain.convert(0))

    def effective_vars(self) -> tuple:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def coeffs_in(self, var: str) -> dict:
        """Split as ``sum_k c_k * var^k``; each ``c_k`` keeps the full variable list."""
        i = self.index(var)
        parts: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: self._new(t) for k, t in parts.items()}

    def leading_coeff_in(self, var: str) -> "MultiPoly":
        if not self.terms:
            return self.zero()
        return self.coeffs_in(var)[self.degree(var)]

    def univariate_coeffs(self, var: str | None = None) -> list:
        """Dense coefficient list, low degree first, for a univariate polynomial."""
        if var is None:
            eff = self.effective_vars()
            if len(eff) > 1:
                raise PolyError(f"not univariate: {eff}")
            var = eff[0] if eff else self.vars[0]
        i = self.index(var)
        for e in self.terms:
            if any(k for j, k in enumerate(e) if j != i):
                raise PolyError(f"not univariate in {var}")
        n = self.degree(var)
        out = [self.domain.convert(0)] * (n + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str, vars: Sequence[str] | None = None,
                        domain: Domain = ZZ):
        vars = tuple(vars or (var,))
        i = vars.index(var)
        base = [0] * len(vars)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = list(base)
                e[i] = k
                terms[tuple(e)] = c
        return cls(vars, terms, domain)

    # equality and hashing
    def _check_compatible(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")
        if self.domain != other.domain:
            raise DomainError(f"domain mismatch: {self.domain.header()} vs {other.domain.header()}")

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.domain == other.domain and self.terms == other.terms
        if isinstance(other, (int,)):
            return self.terms == ({(0,) * len(self.vars): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.domain.header(), frozenset(self.terms.items())))
        return self._hash

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, QuadElement)) or hasattr(other, "numerator"):
            return MultiPoly.const(other, self.vars, self.domain, self.laurent)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = dom.add(out[e], c)
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return self._new(out, laurent=self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        dom = self.domain
        return self._new({e: dom.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        out: dict = {}
        fast = dom is ZZ
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2 if fast else dom.mul(c1, c2)
                if e in out:
                    out[e] = out[e] + c if fast else dom.add(out[e], c)
                else:
                    out[e] = c
        return self._new({e: c for e, c in out.items() if c}, laurent=self.laurent or other.laurent)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.laurent:
                _neg_exp_error()
            if len(self.terms) != 1:
                raise PolyError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            inv = self.domain.div(self.domain.convert(1), c)
            if inv is None:
                raise PolyError("monomial coefficient is not a unit")
            return self._new({tuple(k * n for k in e): self.domain.pow(inv, -n)})
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        c = self.domain.convert(c)
        if not c:
            return self.zero()
        dom = self.domain
        return self._new({e: dom.mul(k, c) for e, k in self.terms.items()})

    def mul_monomial(self, exps: Exps) -> "MultiPoly":
        exps = tuple(exps)
        laurent = self.laurent
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            out[ne] = c
        if not laurent and any(k < 0 for ne in out for k in ne):
            raise PolyError("negative exponent outside a Laurent context")
        return self._new(out)

    # structural maps
    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-embed into a (super)set of variables, possibly reordered."""
        vars = tuple(vars)
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for i, v in enumerate(self.vars):
            if v not in vars and any(e[i] for e in self.terms):
                raise PolyError(f"variable {v!r} occurs but is dropped")
        out = {}
        for e, c in self.terms.items():
            out[tuple(e[j] if j is not None else 0 for j in idx)] = c
        return self._new(out, vars=vars)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return self._new(dict(self.terms), vars=tuple(mapping.get(v, v) for v in self.vars))

    def to_domain(self, domain: Domain) -> "MultiPoly":
        return MultiPoly(self.vars, self.terms, domain, self.laurent)

    def as_polynomial(self) -> "MultiPoly":
        """Drop the Laurent flag; fails if a negative exponent is present."""
        return MultiPoly(self.vars, self.terms, self.domain, laurent=False)

    def clear_denominators(self) -> tuple:
        """Multiply by the monomial negating the minimal exponents.

        Returns ``(shift, poly)`` where ``poly = x^shift * self`` has every
        minimal exponent equal to zero.
        """
        if not self.terms:
            return (0,) * len(self.vars), self.zero()
        shift = tuple(-min(e[i] for e in self.terms) for i in range(len(self.vars)))
        cleared = self.mul_monomial(shift)
        return shift, MultiPoly(self.vars, cleared.terms, self.domain, laurent=False, _clean=True)

    # evaluation
    def evaluate(self, assignment: Mapping[str, object], domain: Domain | None = None):
        """Evaluate at a full assignment.

        With ``domain`` given, coefficients and values are coerced into it and
        arithmetic uses the domain's operations; otherwise plain Python
        operators are used on the supplied values.
        """
        missing = [v for v in self.effective_vars() if v not in assignment]
        if missing:
            raise PolyError(f"missing binding for {', '.join(missing)}")
        vals = [assignment.get(v, 0) for v in self.vars]
        if domain is not None:
            vals = [domain.convert(v) for v in vals]
            total = domain.convert(0)
            for e, c in self.terms.items():
                term = domain.convert(c)
                for v, k in zip(vals, e):
                    if k:
                        term = domain.mul(term, domain.pow(v, k))
                total = domain.add(total, term)
            return total
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def specialize(self, assignment: Mapping[str, object], domain: Domain | None = None) -> "MultiPoly":
        """Substitute values for some variables; the rest remain."""
        domain = domain or self.domain
        keep = [i for i, v in enumerate(self.vars) if v not in assignment]
        sub = [(i, domain.convert(assignment[v])) for i, v in enumerate(self.vars) if v in assignment]
        powcache: dict = {}
        out: dict = {}
        for e, c in self.terms.items():
            term = domain.convert(c)
            for i, val in sub:
                k = e[i]
                if k:
                    key = (i, k)
                    if key not in powcache:
                        powcache[key] = domain.pow(val, k)
                    term = domain.mul(term, powcache[key])
            ne = tuple(e[i] for i in keep)
            out[ne] = domain.add(out[ne], term) if ne in out else term
        return MultiPoly([self.vars[i] for i in keep], {e: c for e, c in out.items() if c},
                         domain, self.laurent)

    def substitute(self, var: str, value: "MultiPoly") -> "MultiPoly":
        """Compose: replace ``var`` by the polynomial ``value`` (same variable list)."""
        i = self.index(var)
        parts = self.coeffs_in(var)
        result = self.zero()
        powers = {}
        for k in sorted(parts):
            if k not in powers:
                powers[k] = value ** k if k >= 0 else _neg_exp_error()
            result = result + parts[k] * powers[k]
        return result

    def digest(self) -> str:
        return hashlib.sha256(dump_poly(self).encode()).hexdigest()[:16]

    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        text = format_expr(self)
        if len(text) > 80:
            text = text[:77] + "..."
        return f"MultiPoly[{','.join(self.vars)}; {self.domain.header()}]({text})"


def _neg_exp_error():
    raise PolyError("negative exponent outside a Laurent context")


# ---------------------------------------------------------------- basic ops

def poly_op(f: MultiPoly, g: MultiPoly, kind: str) -> MultiPoly:
    f._check_compatible(g)
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise PolyError(f"unknown operation {kind!r}")


def stretch(f: MultiPoly, var: str, m: int) -> MultiPoly:
    """Replace ``var`` by ``var**m``."""
    if m < 1:
        raise PolyError("stretch factor must be >= 1")
    i = f.index(var)
    return f._new({e[:i] + (e[i] * m,) + e[i + 1:]: c for e, c in f.terms.items()})


def reciprocal_lift(f: MultiPoly, t_deg: int, var: str = "t", new_var: str = "X") -> MultiPoly:
    """Return ``new_var**t_deg * f(new_var + 1/new_var, ...)`` as an ordinary polynomial.

    ``new_var`` takes the place of ``var`` in the variable list.
    """
    i = f.index(var)
    if f.degree(var) > t_deg:
        raise PolyError(f"t_deg={t_deg} is below deg_{var} f = {f.degree(var)}")
    dom = f.domain
    out: dict = {}
    for e, c in f.terms.items():
        k = e[i]
        # X^(t_deg-k) (X^2+1)^k
        for j in range(k + 1):
            ne = e[:i] + (t_deg - k + 2 * j,) + e[i + 1:]
            term = dom.mul(c, comb(k, j))
            out[ne] = dom.add(out[ne], term) if ne in out else term
    vars = f.vars[:i] + (new_var,) + f.vars[i + 1:]
    return MultiPoly(vars, {e: c for e, c in out.items() if c}, dom, _clean=True)


def is_palindromic(f: MultiPoly, var: str, degree: int) -> bool:
    """Check ``var**degree * f(1/var) == f``."""
    i = f.index(var)
    flipped = {e[:i] + (degree - e[i],) + e[i + 1:]: c for e, c in f.terms.items()}
    return flipped == f.terms


def integer_content(f: MultiPoly) -> int:
    return reduce(gcd, f.terms.values(), 0)


def content_primitive(f: MultiPoly) -> tuple:
    """``(content, primitive)`` with positive content; sign stays on the primitive part."""
    if f.domain is not ZZ:
        raise DomainError("content is defined over the integers")
    if f.is_zero():
        raise PolyError("content of the zero polynomial")
    c = integer_content(f)
    c = abs(c)
    return c, f._new({e: k // c for e, k in f.terms.items()})


def normalize_sign(f: MultiPoly) -> MultiPoly:
    """Make the canonical leading coefficient positive."""
    if f.is_zero():
        return f
    _, c = f.leading_term()
    return -f if c < 0 else f


# ---------------------------------------------------------------- printing

def _format_monomial(vars, e) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 0:
            continue
        if k == 1:
            parts.append(v)
        elif k > 0:
            parts.append(f"{v}^{k}")
        else:
            parts.append(f"{v}^({k})")
    return "*".join(parts)


def format_expr(f: MultiPoly) -> str:
    """Canonical single-line expression."""
    if not f.terms:
        return "0"
    dom = f.domain
    ordered_int = dom.header() in ("Z", "Q") or dom.header().startswith(("Fp:", "Cyc:"))
    pieces = []
    for idx, (e, c) in enumerate(f.sorted_terms()):
        mono = _format_monomial(f.vars, e)
        if ordered_int:
            neg = c < 0
            a = -c if neg else c
            text = dom.format(a)
            if mono:
                body = mono if text == "1" else f"{text}*{mono}"
            else:
                body = text
            if idx == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        else:
            text = dom.format(c)
            body = f"{text}*{mono}" if mono else text
            pieces.append(body if idx == 0 else " + " + body)
    return "".join(pieces)


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text, vars, domain, laurent):
        self.vars = tuple(vars)
        self.domain = domain
        self.laurent = laurent
        self.toks = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*^()/":
                toks.append(("op", ch))
                i += 1
            elif ch == "−":
                toks.append(("op", "-"))
                i += 1
            else:
                raise PolyError(f"malformed token {ch!r} at position {i}")
        toks.append(("end", None))
        return toks

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise PolyError(f"expected {op!r}, got {t[1]!r}")

    def parse(self):
        f = self.expr()
        if self.peek()[0] != "end":
            raise PolyError(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        if self.peek() in (("op", "-"), ("op", "+")):
            neg = self.take()[1] == "-"
            f = self.term()
            f = -f if neg else f
        else:
            f = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.factor()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                f = f * self.factor()
            elif t == ("op", "/"):
                self.take()
                g = self.factor()
                if not g.is_constant() or g.is_zero():
                    raise PolyError("division only by nonzero constants")
                inv = self.domain.div(self.domain.convert(1), g.constant_term())
                if inv is None:
                    raise PolyError(f"division by {g.constant_term()} not exact in {self.domain.header()}")
                f = f.scale(inv)
            elif t[0] in ("num", "name") or t == ("op", "("):
                raise PolyError("implicit multiplication is not allowed; use '*'")
            else:
                return f

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            n = self.exponent()
            if n < 0:
                if not self.laurent:
                    raise PolyError("negative exponent outside a Laurent context")
                if len(base.terms) != 1:
                    raise PolyError("negative power of a non-monomial")
                (e, c), = base.terms.items()
                inv = self.domain.div(self.domain.convert(1), c)
                if inv is None:
                    raise PolyError("negative power of a non-unit")
                return base._new({tuple(k * n for k in e): self.domain.pow(inv, -n)})
            return base ** n
        return base

    def exponent(self):
        t = self.take()
        if t[0] == "num":
            return t[1]
        if t == ("op", "-"):
            t = self.take()
            if t[0] != "num":
                raise PolyError("malformed exponent")
            return -t[1]
        if t == ("op", "("):
            sign = 1
            if self.peek() in (("op", "-"), ("op", "+")):
                sign = -1 if self.take()[1] == "-" else 1
            t = self.take()
            if t[0] != "num":
                raise PolyError("malformed exponent")
            self.expect(")")
            return sign * t[1]
        raise PolyError("malformed exponent")

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return MultiPoly.const(t[1], self.vars, self.domain, self.laurent)
        if t[0] == "name":
            name = t[1]
            if name == "sqrt" and self.peek() == ("op", "("):
                self.take()
                neg = False
                if self.peek() == ("op", "-"):
                    self.take()
                    neg = True
                n = self.take()
                if n[0] != "num":
                    raise PolyError("malformed sqrt")
                self.expect(")")
                D = -n[1] if neg else n[1]
                if getattr(self.domain, "D", None) != D:
                    raise PolyError(f"sqrt({D}) is not in {self.domain.header()}")
                return MultiPoly.const(self.domain.sqrt(), self.vars, self.domain, self.laurent)
            if name not in self.vars:
                raise PolyError(f"unknown variable {name!r}")
            return MultiPoly.var(name, self.vars, self.domain, self.laurent)
        if t == ("op", "("):
            f = self.expr()
            self.expect(")")
            return f
        raise PolyError(f"unexpected token {t[1]!r}")


def parse_poly(text: str, vars: Sequence[str], domain: Domain = ZZ, laurent: bool = False) -> MultiPoly:
    return _Parser(text, vars, domain, laurent).parse()


# ---------------------------------------------------------------- fixtures

def dump_poly(f: MultiPoly, comments: Iterable[str] = ()) -> str:
    """Serialize in the ``poly v1`` fixture format."""
    lines = ["poly v1", "vars: " + " ".join(f.vars), "domain: " + f.domain.header()]
    lines += [f"# {c}" for c in comments]
    for e, c in f.sorted_terms():
        lines.append(f"{f.domain.format(c)} : " + " ".join(str(k) for k in e))
    return "\n".join(lines) + "\n"


def load_poly(text: str) -> tuple:
    """Parse ``poly v1`` text; returns ``(poly, comments)``."""
    from .domains import domain_from_header

    lines = text.splitlines()
    if not lines or lines[0].strip() != "poly v1":
        raise PolyError("missing 'poly v1' header")
    comments, body = [], []
    vars = domain = None
    expr = None
    for ln in lines[1:]:
        s = ln.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments.append(s[1:].strip())
        elif s.startswith("vars:"):
            vars = s[5:].split()
        elif s.startswith("domain:"):
            domain = domain_from_header(s[7:])
        elif s.startswith("expr:"):
            expr = s[5:].strip()
        else:
            body.append(s)
    if vars is None or domain is None:
        raise PolyError("fixture needs 'vars:' and 'domain:' lines")
    if expr is not None:
        if body:
            raise PolyError("fixture mixes 'expr:' and term lines")
        return parse_poly(expr, vars, domain), comments
    terms = {}
    for s in body:
        coeff, sep, exps = s.partition(" : ")
        if not sep:
            raise PolyError(f"malformed term line {s!r}")
        e = tuple(int(k) for k in exps.split())
        if len(e) != len(vars):
            raise PolyError(f"term {s!r} has wrong arity")
        if any(k < 0 for k in e):
            raise PolyError(f"negative exponent in {s!r}")
        if e in terms:
            raise PolyError(f"duplicate monomial in {s!r}")
        terms[e] = domain.parse_coeff(coeff)
    return MultiPoly(vars, terms, domain), comments
