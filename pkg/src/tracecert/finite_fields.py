"""Dense univariate polynomials over F_p.

Polynomials are lists of residues, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations

from sympy.ntheory import factorint


def trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce_coeffs(coeffs, p: int) -> list:
    return trim([c % p for c in coeffs])


def deg(f: list) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    if len(f) <= dg:
        return [], trim(f)
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k] * inv % p
        if c:
            q[k - dg] = c
            for j in range(dg + 1):
                f[k - dg + j] = (f[k - dg + j] - c * g[j]) % p
    return trim(q), trim(f[:dg])


def rem(f, g, p):
    return divmod_poly(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gcd(f, g, p):
    f, g = trim(list(f)), trim(list(g))
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def mulmod(f, g, m, p):
    return rem(mul(f, g, p), m, p)


def powmod(f, e: int, m, p):
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        base = mulmod(base, base, m, p)
        e >>= 1
    return result


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(f, p: int) -> bool:
    """Distinct-degree ladder.

    ``f`` of degree ``n`` (made monic) is irreducible iff
    ``Y^(p^n) = Y mod f`` and ``gcd(Y^(p^(n/q)) - Y, f) = 1`` for every prime
    ``q | n``.
    """
    f = trim([c % p for c in f])
    if not f:
        raise ValueError("zero polynomial")
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    f = monic(f, p)
    Y = [0, 1]
    # frob[k] = Y^(p^k) mod f
    frob = {0: rem(Y, f, p)}
    cur = frob[0]
    for k in range(1, n + 1):
        cur = powmod(cur, p, f, p)
        frob[k] = cur
    if sub(frob[n], Y, p):
        return False
    for q in factorint(n):
        h = sub(frob[n // q], Y, p)
        if deg(gcd(h, f, p)) > 0:
            return False
    return True


def roots(f, p: int) -> list:
    """All roots in F_p by exhaustive evaluation (small p only)."""
    return [x for x in range(p) if evaluate(f, x, p) == 0]


def resultant(f, g, p: int) -> int:
    """Resultant mod p by the Euclidean recurrence.

    ``Res(f, g) = (-1)^(mn) lc(g)^(m - deg r) Res(g, r)`` with ``r = f mod g``.
    """
    f, g = trim([c % p for c in f]), trim([c % p for c in g])
    if not f or not g:
        return 0
    result = 1
    while True:
        m, n = deg(f), deg(g)
        if n == 0:
            return result * pow(g[0], m, p) % p
        r = rem(f, g, p)
        if not r:
            return 0
        if (m * n) & 1:
            result = -result
        result = result * pow(g[-1], m - deg(r), p) % p
        f, g = g, r
