import pytest
from hypothesis import strategies as st

from tracecert.domains import ZZ
from tracecert.fixtures import Fixtures
from tracecert.poly import MultiPoly


@pytest.fixture(scope="session")
def fx():
    return Fixtures()


@pytest.fixture(scope="session")
def S(fx):
    return fx.poly("S")


@pytest.fixture(scope="session")
def R(fx):
    return fx.poly("R")


def polys(vars=("X", "Y"), max_terms=6, max_exp=4, coeff=20, laurent=False):
    """Hypothesis strategy for small integer polynomials."""
    lo = -max_exp if laurent else 0
    exps = st.tuples(*[st.integers(lo, max_exp) for _ in vars])
    coeffs = st.integers(-coeff, coeff).filter(bool)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: MultiPoly(vars, d, ZZ, laurent=laurent))


@pytest.fixture(scope="session")
def elimination_report(fx):
    from tracecert.elimination import eliminate_against
    P, Q = fx.poly("P"), fx.poly("Q")
    return eliminate_against(P.with_vars(Q.vars), Q, "X", fx.poly("R"))
