from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tracecert.domains import (CyclotomicResidue, DomainError, PrimeField, QuadElement,
                               QuadraticField, domain_from_header, multiplicative_order)

K7 = QuadraticField(-7)


def test_quad_lowest_terms_and_sign():
    e = QuadElement(34, 6, 16, -7)
    assert (e.r, e.s, e.q) == (17, 3, 8)
    f = QuadElement(1, 1, -2, -7)
    assert (f.r, f.s, f.q) == (-1, -1, 2)


def test_quad_arithmetic_against_norm():
    e = K7.element(17, 3, 8)
    # e * conj(e) = N(e) = (289 + 63) / 64 = 11/2
    assert e * e.conjugate() == Fraction(11, 2)
    assert e.norm() == Fraction(11, 2)
    assert e.trace() == Fraction(17, 4)
    assert e * e.inverse() == 1


def test_sqrt_squared():
    s = K7.sqrt()
    assert s * s == -7


def test_mixing_fields_rejected():
    with pytest.raises(DomainError):
        K7.sqrt() + QuadraticField(-1).sqrt()


def test_non_squarefree_rejected():
    with pytest.raises(DomainError):
        QuadraticField(-4)


def test_prime_field_requires_prime():
    with pytest.raises(DomainError):
        PrimeField(15)


def test_cyclotomic_residue_order():
    dom = CyclotomicResidue(31, 5)
    assert multiplicative_order(dom.root, 31) == 5
    with pytest.raises(DomainError):
        CyclotomicResidue(31, 7)


def test_header_roundtrip():
    for text in ("Z", "Q", "Fp:17", "Quad:-7", "Quad:-1"):
        assert domain_from_header(text).header() == text


def test_quad_parse_format_roundtrip():
    for e in (K7.element(17, 3, 8), K7.element(-13, -7, 8), K7.element(5)):
        assert K7.parse_coeff(K7.format(e)) == e


small = st.integers(-50, 50)


@given(small, small, st.integers(1, 20), small, small, st.integers(1, 20))
def test_quad_field_axioms(r1, s1, q1, r2, s2, q2):
    a, b = K7.element(r1, s1, q1), K7.element(r2, s2, q2)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b).norm() == a.norm() * b.norm()
    if b != 0:
        assert (a / b) * b == a
