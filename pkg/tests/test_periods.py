from fractions import Fraction as F

import pytest

from zetacf.periods import (
    CATALAN,
    LOG2,
    ONE,
    PI3_OVER_SQRT3,
    Basis,
    RationalPeriod,
    Zeta,
    period,
    zeta_p,
    zeta_star,
)


def test_zero_coefficients_dropped():
    p = RationalPeriod({Zeta(2): 1, LOG2: 0})
    assert len(p) == 1
    assert (p - p) == RationalPeriod()
    assert str(RationalPeriod()) == "0"


def test_arithmetic():
    a = period(One=2, Zeta2=-1)
    b = period(Zeta2=1, Log2=F(1, 2))
    assert a + b == period(One=2, Log2=F(1, 2))
    assert 3 * b == period(Zeta2=3, Log2=F(3, 2))
    assert -a == period(One=-2, Zeta2=1)


def test_format_order():
    p = period(Log2=16, Zeta3=3, One=-1, Zeta5=F(1, 2))
    assert p.format() == "-1+1/2*zeta(5)+3*zeta(3)+16*log(2)"
    assert RationalPeriod({PI3_OVER_SQRT3: -2, Zeta(3): 39}).format() == "39*zeta(3)-2*pi^3/sqrt(3)"


def test_json_round_trip():
    p = period(Zeta8=127, Zeta6=-124, Zeta2=64, Catalan=F(-3, 7))
    obj = p.to_json()
    assert obj == {"Zeta(8)": "127", "Zeta(6)": "-124", "Zeta(2)": "64", "Catalan": "-3/7"}
    assert RationalPeriod.from_json(obj) == p


def test_degree_and_parts():
    p = period(One=3, Zeta5=1, Catalan=2)
    assert p.degree == 5
    assert p.constant_part() == 3
    assert p.without_constant() == period(Zeta5=1, Catalan=2)
    assert RationalPeriod({CATALAN: 1}).degree == 2


def test_bad_basis():
    with pytest.raises(ValueError):
        Zeta(1)
    with pytest.raises(ValueError):
        Basis("Pi")
    with pytest.raises(ValueError):
        Basis("Log2", 3)


def test_zeta_helpers():
    assert zeta_star(0) == RationalPeriod()
    assert zeta_star(1) == RationalPeriod({LOG2: 1})
    assert zeta_star(5) == RationalPeriod({Zeta(5): 15})
    assert zeta_p(0) == RationalPeriod()
    assert zeta_p(3) == RationalPeriod({Zeta(3): 1})


def test_hashable():
    assert len({period(Zeta2=1), period(Zeta2=1), period(One=1)}) == 2
    assert RationalPeriod({ONE: 1}) == RationalPeriod([(ONE, F(1, 2)), ("One", F(1, 2))])
