from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetacf.exact_arith import (
    NotCoprime,
    PolyQ,
    RatFunc,
    ZeroAtIntegerPole,
    bernoulli,
    decompose_core,
    ext_euclid,
    format_rat,
    integer_roots_in,
    poly_divrem,
    poly_gcd,
    poly_lcm,
)
from zetacf.parsing import parse_ratfunc

X = PolyQ.x()

small_rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small_rat, min_size=0, max_size=6).map(PolyQ)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_canonical_format():
    assert str(PolyQ([3, -8, 10, -4, 2])) == "2*x^4-4*x^3+10*x^2-8*x+3"
    assert PolyQ([3, -8, 10, -4, 2]).format("n") == "2*n^4-4*n^3+10*n^2-8*n+3"
    assert PolyQ([0, F(1, 2)]).format("n") == "1/2*n"
    assert str(PolyQ()) == "0"
    assert str(-X) == "-x"


def test_trailing_zeros_dropped_and_degree():
    p = PolyQ([1, 2, 0, 0])
    assert p.degree == 1
    assert PolyQ().degree == float("-inf")
    assert PolyQ([5]).is_constant()


def test_evaluation_integer_and_rational():
    p = 2 * X**4 - 4 * X**3 + 10 * X**2 - 8 * X + 3
    assert p(0) == 3
    assert p(1) == 3
    assert p(2) == 27
    assert p(F(1, 2)) == F(9, 8)


def test_shift_and_compose():
    p = X**2 - X + 1
    assert p.shift(1) == X**2 + X + 1
    assert p.compose(1 - X) == p
    assert (2 * X - 1).compose(1 - X) == -(2 * X - 1)


def test_divmod_exact_quotient():
    q, r = divmod(X**3 - 1, X - 1)
    assert q == X**2 + X + 1 and r.is_zero()


def test_divide_by_zero_polynomial():
    with pytest.raises(ZeroDivisionError):
        poly_divrem(X, PolyQ())


def test_ext_euclid_example():
    g, u, v = ext_euclid(X**2 - 1, X**2 - 3 * X + 2)
    assert g == X - 1
    assert u * (X**2 - 1) + v * (X**2 - 3 * X + 2) == g


def test_lcm():
    assert poly_lcm(X * (X + 1), (X + 1) * (X + 2)) == X * (X + 1) * (X + 2)


def test_integer_roots():
    p = (X - 3) * (X + 2) * (2 * X - 1)
    assert integer_roots_in(p, -10, 10) == [-2, 3]
    assert integer_roots_in(p, 0, 10) == [3]
    assert integer_roots_in(X**2 + 1, -100, 100) == []


@settings(max_examples=60, deadline=None)
@given(polys, nonzero_polys)
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_bezout(a, b):
    g, u, v = ext_euclid(a, b)
    assert u * a + v * b == g
    assert (a % g).is_zero() and (b % g).is_zero()
    assert g.lead == 1
    assert poly_gcd(a, b) == g


@settings(max_examples=60, deadline=None)
@given(polys, polys, small_rat)
def test_ring_laws_under_evaluation(a, b, t):
    assert (a * b)(t) == a(t) * b(t)
    assert (a + b)(t) == a(t) + b(t)
    assert a.shift(1)(t) == a(t + 1)


def test_ratfunc_reduces_and_normalizes():
    f = RatFunc(2 * X**2 + 2 * X, 4 * X + 4)
    assert f.is_polynomial()
    assert f.as_poly() == F(1, 2) * X
    g = RatFunc(X**3, 2 * X + 2)
    assert g.den == X + 1 and g.num == F(1, 2) * X**3
    assert g.format("n") == "1/2*n^3/(n+1)"
    assert parse_ratfunc(g.format("n")) == g


def test_ratfunc_pole():
    with pytest.raises(ZeroDivisionError):
        RatFunc(X, X - 2)(2)


def test_format_rat():
    assert format_rat(F(-3, 4)) == "-3/4"
    assert format_rat(F(6, 3)) == "2"


def _partial_fraction_matches(P, k):
    c, U, V = decompose_core(P, k)
    lhs = RatFunc(PolyQ([1]), X**k * P * P.shift(1))
    rhs = RatFunc(PolyQ())
    for j, cj in enumerate(c, start=1):
        rhs = rhs + RatFunc(PolyQ([cj]), X**j)
    rhs = rhs + RatFunc(U, P.shift(1)) + RatFunc(V, P)
    return lhs == rhs and U.degree < P.degree and V.degree < P.degree


@pytest.mark.parametrize(
    "P,k",
    [(2 * X - 1, 2), (2 * X - 1, 3), (3 * X**2 - 3 * X + 1, 8), (X**2 - X + 1, 5), (2 * X**2 - 2 * X + 1, 3),
     (5 * X**4 - 10 * X**3 + 19 * X**2 - 14 * X + 4, 5)],
)
def test_decompose_core_reconstructs(P, k):
    assert _partial_fraction_matches(P, k)


def test_decompose_core_known_coefficients():
    c, U, V = decompose_core(2 * X - 1, 2)
    # 1/(x^2 (4x^2-1)) = -1/x^2 + 2/(2x-1) - 2/(2x+1)
    assert c == [F(0), F(-1)]
    assert U == PolyQ([-2]) and V == PolyQ([2])


def test_decompose_core_errors():
    with pytest.raises(ZeroAtIntegerPole):
        decompose_core(X * (X - 3) + 0, 2)
    with pytest.raises(NotCoprime):
        decompose_core((2 * X - 1) * (2 * X + 1), 2)


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == F(-1, 2)
    assert bernoulli(2) == F(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == F(-691, 2730)
    assert bernoulli(20) == F(-174611, 330)
