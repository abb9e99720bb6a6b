import random

import mpmath
import pytest

from tracecert.alexander import (AlexanderError, TORRES_QUOTIENT, alexander_report,
                                 branched_cover_alexander, is_trivial_alexander, leading_coeff_product,
                                 torres_check)
from tracecert.poly import MultiPoly, parse_poly

U = ("u",)


@pytest.fixture(scope="module")
def delta(fx):
    return fx.poly("alexander")


def complex_product(delta, u0, d):
    mpmath.mp.dps = 60
    total = mpmath.mpc(1)
    for i in range(1, d):
        z = mpmath.exp(2j * mpmath.pi * i / d)
        total *= sum(c * mpmath.mpf(u0) ** e[0] * z ** e[1] for e, c in delta.terms.items())
    assert abs(total.imag) < 1e-30
    return int(mpmath.nint(total.real))


def test_d1_is_empty_product(delta):
    assert branched_cover_alexander(delta, 1) == MultiPoly.const(1, U)
    with pytest.raises(AlexanderError):
        branched_cover_alexander(delta, 0)


def test_d3_degree_and_leading_coefficient(delta):
    f = branched_cover_alexander(delta, 3)
    assert f.degree("u") == 2
    # prod zeta = 1, prod (zeta - 2) = Phi_3(2) = 7, prod (zeta^3 - zeta + 1) = Phi_3(2) = 7
    assert abs(f.leading_term()[1]) == 49


@pytest.mark.parametrize("d", [3, 5, 7])
def test_matches_complex_product(delta, d):
    f = branched_cover_alexander(delta, d)
    rng = random.Random(d)
    for _ in range(5):
        u0 = rng.randint(-6, 6)
        assert f.evaluate({"u": u0}) == complex_product(delta, u0, d)


def test_degree_and_leading_for_odd_d(delta):
    for d in range(3, 22, 2):
        f = branched_cover_alexander(delta, d)
        assert f.degree("u") == d - 1
        assert abs(f.leading_term()[1]) == abs(leading_coeff_product(d))


def test_leading_product_examples():
    assert abs(leading_coeff_product(3)) == 49
    assert abs(leading_coeff_product(2)) == 3
    assert all(leading_coeff_product(d) != 0 for d in range(3, 100, 2))
    with pytest.raises(AlexanderError):
        leading_coeff_product(1)


def test_triviality():
    assert is_trivial_alexander(MultiPoly.const(1, U))
    assert is_trivial_alexander(parse_poly("u^3", U))
    assert is_trivial_alexander(parse_poly("-u^2", U))
    assert not is_trivial_alexander(parse_poly("u - 1", U))
    with pytest.raises(AlexanderError):
        is_trivial_alexander(parse_poly("0", U))


def test_never_trivial_for_odd_d(delta):
    for d in range(3, 100, 2):
        assert not is_trivial_alexander(branched_cover_alexander(delta, d))


def test_even_d_is_flagged(delta):
    assert "even" in alexander_report(delta, 4).line()
    assert "even" not in alexander_report(delta, 5).line()


def test_torres(delta):
    res = torres_check(delta)
    assert res.ok and str(res.quotient) == TORRES_QUOTIENT
    assert res.value_at_one == 2 * res.quotient.evaluate({"v": 1})
    assert res.quotient.evaluate({"v": 1}) == -1


def test_torres_negative_control(delta):
    broken = delta + parse_poly("v^2", delta.vars)
    assert torres_check(broken).quotient is None
