"""Group words, two-generator presentations and trace polynomials.

Letters are single characters; an upper-case letter is the inverse of the
corresponding lower-case generator.  Two independent trace engines live here:
the production path multiplies the Laurent-matrix images of the generators
and rewrites the trace in trace coordinates (:func:`symmetrize`), and
:func:`trace_poly` runs the Fricke recursion as a cross-check on short words.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce

from .domains import ZZ
from .poly import MultiPoly, PolyError

LVARS = ("x", "y")
TVARS = ("X", "Y", "Z")


class WordError(ValueError):
    pass


class SymmetryError(ValueError):
    pass


def invert_letter(ch: str) -> str:
    return ch.lower() if ch.isupper() else ch.upper()


@dataclass(frozen=True)
class GroupWord:
    letters: tuple

    @classmethod
    def of(cls, text: str) -> "GroupWord":
        return cls(tuple(text))

    def __str__(self):
        return "".join(self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(invert_letter(c) for c in reversed(self.letters)))

    def free_reduce(self) -> "GroupWord":
        out: list = []
        for c in self.letters:
            if out and out[-1] == invert_letter(c):
                out.pop()
            else:
                out.append(c)
        return GroupWord(tuple(out))

    def cyclic_reduce(self) -> "GroupWord":
        w = list(self.free_reduce().letters)
        while len(w) >= 2 and w[0] == invert_letter(w[-1]):
            w = w[1:-1]
        return GroupWord(tuple(w))

    def rotate(self, k: int) -> "GroupWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return GroupWord(self.letters[k:] + self.letters[:k])


@dataclass
class Presentation:
    generators: tuple
    relators: list = field(default_factory=list)
    named_words: dict = field(default_factory=dict)

    def alphabet(self) -> set:
        return set(self.generators) | {g.upper() for g in self.generators}

    def word(self, name: str) -> GroupWord:
        try:
            return self.named_words[name]
        except KeyError:
            raise WordError(f"no word named {name!r}") from None


def parse_word(text: str, generators=("a", "b")) -> GroupWord:
    allowed = set(generators) | {g.upper() for g in generators}
    text = text.strip()
    for i, ch in enumerate(text):
        if ch not in allowed:
            raise WordError(f"undeclared letter {ch!r} at position {i}")
    return GroupWord(tuple(text))


def parse_presentation(text: str) -> Presentation:
    """Read the ``presentation v1`` format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "presentation v1":
        raise WordError("missing 'presentation v1' header")
    gens = None
    rels, named = [], {}
    for ln in lines[1:]:
        if ln.startswith("gens:"):
            gens = tuple(ln[5:].split())
            for g in gens:
                if len(g) != 1 or not g.islower():
                    raise WordError(f"generator {g!r} must be a single lower-case letter")
        elif gens is None:
            raise WordError("'gens:' must precede words")
        elif ln.startswith("rel:"):
            rels.append(parse_word(ln[4:], gens))
        elif ln.startswith("word "):
            head, sep, body = ln[5:].partition(":")
            if not sep:
                raise WordError(f"malformed line {ln!r}")
            named[head.strip()] = parse_word(body, gens)
        else:
            raise WordError(f"unrecognized line {ln!r}")
    if gens is None:
        raise WordError("no generators declared")
    return Presentation(gens, rels, named)


def format_presentation(pres: Presentation) -> str:
    lines = ["presentation v1", "gens: " + " ".join(pres.generators)]
    lines += [f"rel: {w}" for w in pres.relators]
    lines += [f"word {k}: {w}" for k, w in pres.named_words.items()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- matrices

def _L(text: str) -> MultiPoly:
    from .poly import parse_poly

    return parse_poly(text, LVARS, ZZ, laurent=True)


@dataclass(frozen=True)
class ParamMatrix:
    """2x2 matrix with entries in the Laurent ring Z[x^±1, y^±1]."""

    a: MultiPoly
    b: MultiPoly
    c: MultiPoly
    d: MultiPoly

    def __matmul__(self, o: "ParamMatrix") -> "ParamMatrix":
        return ParamMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __sub__(self, o: "ParamMatrix") -> "ParamMatrix":
        return ParamMatrix(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def det(self) -> MultiPoly:
        return self.a * self.d - self.b * self.c

    def trace(self) -> MultiPoly:
        return self.a + self.d

    def adjugate(self) -> "ParamMatrix":
        return ParamMatrix(self.d, -self.b, -self.c, self.a)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


def identity_matrix() -> ParamMatrix:
    one, zero = _L("1"), _L("0")
    return ParamMatrix(one, zero, zero, one)


def generator_matrices() -> dict:
    """Images of a, b (and their inverses) normalized so that tr(ab) = -2."""
    ma = ParamMatrix(_L("x"), _L("1"), _L("0"), _L("x^(-1)"))
    mb = ParamMatrix(_L("y"), _L("0"), _L("-x*y-2-x^(-1)*y^(-1)"), _L("y^(-1)"))
    # det = 1, so the adjugate is the inverse
    return {"a": ma, "b": mb, "A": ma.adjugate(), "B": mb.adjugate()}


def rep_matrix(w: GroupWord) -> ParamMatrix:
    gens = generator_matrices()
    w = w.free_reduce()
    for ch in w.letters:
        if ch not in gens:
            raise WordError(f"letter {ch!r} is not a or b")
    return reduce(lambda m, ch: m @ gens[ch], w.letters, identity_matrix())


# ---------------------------------------------------------------- symmetrize

def _trace_basis(n: int, X: MultiPoly) -> list:
    """``T_i`` with ``T_i(u + 1/u) = u^i + u^-i`` for i >= 1 (T_0 := 2)."""
    two = X.const(2, X.vars, X.domain)
    out = [two, X]
    for _ in range(2, n + 1):
        out.append(X * out[-1] - out[-2])
    return out


def symmetrize(f: MultiPoly, new_vars=None) -> MultiPoly:
    """Rewrite a Laurent polynomial invariant under each ``u -> 1/u`` in trace coordinates.

    For variables ``(x, y, ...)`` the result ``g`` in ``(X, Y, ...)`` satisfies
    ``g(x + 1/x, y + 1/y, ...) = f``.
    """
    n = len(f.vars)
    new_vars = tuple(new_vars or (v.upper() for v in f.vars))
    if len(new_vars) != n:
        raise PolyError("new variable list has the wrong length")
    for e, c in f.terms.items():
        for i in range(n):
            mirror = e[:i] + (-e[i],) + e[i + 1:]
            if f.terms.get(mirror) != c:
                mono = "*".join(f"{v}^{k}" for v, k in zip(f.vars, e))
                raise SymmetryError(f"monomial {mono} has no mirror under {f.vars[i]} -> 1/{f.vars[i]}")
    gens = [MultiPoly.var(v, new_vars, f.domain) for v in new_vars]
    maxdeg = [max((abs(e[i]) for e in f.terms), default=0) for i in range(n)]
    bases = [_trace_basis(max(maxdeg[i], 1), gens[i]) for i in range(n)]
    one = MultiPoly.const(1, new_vars, f.domain)
    result = MultiPoly(new_vars, {}, f.domain)
    for e, c in f.terms.items():
        if any(k < 0 for k in e):
            continue
        term = one
        for i, k in enumerate(e):
            if k:
                term = term * bases[i][k]
        result = result + term.scale(c)
    return result


def trace_in_coordinates(w: GroupWord) -> MultiPoly:
    """Trace of ``rep_matrix(w)`` as a polynomial in ``(X, Y)``."""
    return symmetrize(rep_matrix(w).trace(), ("X", "Y"))


def derive_meridian_trace(word: GroupWord, vars=("t", "X", "Y")) -> MultiPoly:
    """``trace(w) - t`` in ``(t, X, Y)``; zero set is the meridian-trace relation."""
    g = trace_in_coordinates(word).with_vars(vars)
    return g - MultiPoly.var(vars[0], vars, ZZ)


# ---------------------------------------------------------------- Fricke

MAX_FRICKE_LENGTH = 12


def _canonical_cyclic(letters: tuple) -> tuple:
    # orientation with fewer inverse letters first, so the recursion strictly
    # decreases min(#inverse letters, #positive letters)
    if not letters:
        return letters
    inv = tuple(invert_letter(c) for c in reversed(letters))
    k = sum(c.isupper() for c in letters)
    reps = [letters] if 2 * k < len(letters) else [inv] if 2 * k > len(letters) else [letters, inv]
    return min(w[i:] + w[:i] for w in reps for i in range(len(w)))


def trace_poly(w: GroupWord, max_length: int = MAX_FRICKE_LENGTH) -> MultiPoly:
    """Trace polynomial in ``(X, Y, Z) = (tr a, tr b, tr ab)`` by the Fricke identities."""
    if len(w) > max_length:
        raise WordError(f"word length {len(w)} exceeds the Fricke budget {max_length}")
    for ch in w.letters:
        if ch not in "abAB":
            raise WordError(f"letter {ch!r} is not a or b")
    X, Y, Z = (MultiPoly.var(v, TVARS) for v in TVARS)
    two = MultiPoly.const(2, TVARS)
    memo: dict = {}

    def tr(letters: tuple) -> MultiPoly:
        letters = GroupWord(letters).cyclic_reduce().letters
        key = _canonical_cyclic(letters)
        if key in memo:
            return memo[key]
        memo[key] = val = _tr(key)
        return val

    def _tr(w: tuple) -> MultiPoly:
        n = len(w)
        if n == 0:
            return two
        if n == 1:
            return X if w[0] in "aA" else Y
        for i, ch in enumerate(w):
            if ch.isupper():
                # rotate so the inverse letter is last: w ~ u g^-1
                r = w[i + 1:] + w[:i + 1]
                u, g = r[:-1], r[-1].lower()
                return tr(u) * (X if g == "a" else Y) - tr(u + (g,))
        # positive word: look for a cyclic square g g
        for i in range(n):
            if w[i] == w[(i + 1) % n]:
                k = (i + 2) % n
                r = w[k:] + w[:k]
                u, g = r[:-2], r[-1]
                gt = X if g == "a" else Y
                return tr(u + (g,)) * gt - tr(u)
        # alternating (ab)^k
        k = n // 2
        if k == 1:
            return Z
        return Z * tr(("a", "b") * (k - 1)) - tr(("a", "b") * (k - 2))

    return tr(w.free_reduce().letters)


def specialize_z(f: MultiPoly, z=-2) -> MultiPoly:
    return f.specialize({"Z": z})


# ---------------------------------------------------------------- relation

def relation_entries(w1: GroupWord, w2: GroupWord, w3: GroupWord, w4: GroupWord) -> list:
    """Entries of ``M(w1 w2) - M(w3 w4)^-1``, each cleared by its minimal monomial."""
    lhs = rep_matrix(w1 * w2)
    rhs = rep_matrix(w3 * w4).adjugate()
    return [e.clear_denominators()[1] for e in (lhs - rhs).entries()]


def random_word(rng: random.Random, length: int, letters="abAB") -> GroupWord:
    return GroupWord(tuple(rng.choice(letters) for _ in range(length)))


class GFp2:
    """Element ``u + v*s`` of F_p[s]/(s^2 - n) for a fixed non-residue ``n``."""

    __slots__ = ("u", "v", "p", "n")

    def __init__(self, u, v, p, n):
        self.u, self.v, self.p, self.n = u % p, v % p, p, n

    def _lift(self, o):
        if isinstance(o, GFp2):
            return o
        if isinstance(o, int):
            return GFp2(o, 0, self.p, self.n)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        return GFp2(self.u + o.u, self.v + o.v, self.p, self.n)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return GFp2(self.u - o.u, self.v - o.v, self.p, self.n)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __neg__(self):
        return GFp2(-self.u, -self.v, self.p, self.n)

    def __mul__(self, o):
        o = self._lift(o)
        p = self.p
        return GFp2(self.u * o.u + self.v * o.v * self.n, self.u * o.v + self.v * o.u, p, self.n)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r, b = GFp2(1, 0, self.p, self.n), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def inverse(self):
        p = self.p
        den = (self.u * self.u - self.v * self.v * self.n) % p
        inv = pow(den, -1, p)
        return GFp2(self.u * inv, -self.v * inv, p, self.n)

    def is_zero(self):
        return self.u == 0 and self.v == 0

    def __eq__(self, o):
        o = self._lift(o)
        return (self.u, self.v) == (o.u, o.v)

    def __hash__(self):
        return hash((self.u, self.v, self.p))

    def __repr__(self):
        return f"GFp2({self.u}, {self.v}; p={self.p})"


def fp2_sqrt(a: GFp2) -> GFp2 | None:
    """Square root of an F_p element inside F_{p^2}; always exists."""
    p, n = a.p, a.n
    if a.v != 0:
        raise ValueError("only square roots of F_p elements are supported")
    u = a.u
    if u == 0:
        return GFp2(0, 0, p, n)
    if pow(u, (p - 1) // 2, p) == 1:
        from sympy.ntheory import sqrt_mod

        return GFp2(sqrt_mod(u, p), 0, p, n)
    # u = n * w^2 with w in F_p, so sqrt(u) = w*s
    w2 = u * pow(n, -1, p) % p
    from sympy.ntheory import sqrt_mod

    return GFp2(0, sqrt_mod(w2, p), p, n)


def sample_curve_points(P: MultiPoly, p: int, count: int, seed: int = 0) -> list:
    """Points ``(x0, y0)`` with ``x0`` in F_p*, ``y0`` in F_{p^2}, and
    ``P(x0 + 1/x0, y0 + 1/y0) = 0`` where ``Y0 = y0 + 1/y0`` lies in F_p.

    Roots of ``P(X0, Y)`` are found by exhaustive search over F_p.
    """
    rng = random.Random(seed)
    n = next(k for k in range(2, p) if pow(k, (p - 1) // 2, p) == p - 1)
    points = []
    tries = 0
    while len(points) < count and tries < 50 * count:
        tries += 1
        x0 = rng.randrange(2, p - 1)
        X0 = (x0 + pow(x0, -1, p)) % p
        col = P.specialize({"X": X0}, None).to_domain(ZZ)
        coeffs = [c % p for c in col.univariate_coeffs("Y")]
        roots = [r for r in range(p) if _horner(coeffs, r, p) == 0]
        for Y0 in roots:
            # y0^2 - Y0 y0 + 1 = 0
            disc = GFp2((Y0 * Y0 - 4) % p, 0, p, n)
            sq = fp2_sqrt(disc)
            inv2 = pow(2, -1, p)
            y0 = (GFp2(Y0, 0, p, n) + sq) * inv2
            points.append((x0, y0, Y0))
    return points[:count]


def _horner(coeffs, r, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * r + c) % p
    return acc
