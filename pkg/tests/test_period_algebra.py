from fractions import Fraction as F

import pytest

from zetacf.cf_engine import convergents, parse_cf, print_cf
from zetacf.exact_arith import PolyQ, ZeroAtIntegerPole, decompose_core
from zetacf.period_algebra import (
    FAMILIES,
    KNOWN_IDENTITIES,
    ConvergenceViolation,
    build_identity,
    catalog,
    closed_form_head,
    closed_form_numerator,
    decompose_period,
    divisibility_check,
    family,
    family_lhs,
    multiplier,
    multiplier_cf,
    multiplier_cf_via_euler,
    search_multipliers,
)
from zetacf.periods import period

X = PolyQ.x()


@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_catalog_divides_for_admissible_k(sign):
    for entry in catalog(sign):
        ks = entry.smallest(3)
        assert len(ks) == (1 if entry.exact_k else 3)
        for k in ks:
            assert divisibility_check(entry.P, k, sign) is not None, (entry.describe(), k)


@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_catalog_symmetry(sign):
    for entry in catalog(sign):
        d = int(entry.P.degree)
        assert entry.P.compose(1 - X) == (-1) ** d * entry.P
        assert entry.P(0) ** 2 == entry.P(1) ** 2


def test_inadmissible_k_does_not_divide():
    assert divisibility_check(2 * X - 1, 3, "plus") is None
    assert divisibility_check(2 * X - 1, 2, "minus") is None
    assert divisibility_check(X**2 - X + 1, 4, "plus") is None


def test_plus_sign_c1_vanishes_across_catalog():
    for entry in catalog("plus"):
        for k in entry.smallest(3):
            assert decompose_core(entry.P, k)[0][0] == 0


def test_telescoping_example():
    per, telescoped, residual = decompose_period(2 * X - 1, 2, "plus")
    assert per == period(One=2, Zeta2=-1)
    assert telescoped and residual.is_zero()


def test_plus_sign_divergence_detected():
    with pytest.raises(ConvergenceViolation):
        decompose_period(2 * X - 1, 1, "plus")


def test_multiplier_result():
    res = multiplier(2 * X - 1, 2, "plus")
    assert print_cf(res.cf) == "[[0,2*n^2-2*n+3],[1,-n^4]]"
    assert res.R == 2 * X**2 - 2 * X + 3
    assert res.period == period(One=2, Zeta2=-1)
    # the sum itself, checked against its convergents
    total = sum(F(1, n * n * (2 * n - 1) * (2 * n + 1)) for n in range(1, 41))
    assert convergents(res.cf, 40)[-1].value == total


def test_multiplier_cf_rejects_nondividing_p():
    with pytest.raises(ValueError):
        multiplier_cf(2 * X - 1, 3, "plus")
    with pytest.raises(ValueError):
        divisibility_check(PolyQ(), 2, "plus")
    with pytest.raises(ValueError):
        divisibility_check(2 * X - 1, 2, "both")


def test_multiplier_cf_matches_euler_route():
    for sign in ("plus", "minus"):
        for entry in catalog(sign):
            for k in entry.smallest(2):
                assert multiplier_cf(entry.P, k, sign) == multiplier_cf_via_euler(entry.P, k, sign)


def test_pole_at_integer():
    with pytest.raises(ZeroAtIntegerPole):
        decompose_period(X * (2 * X - 1), 2, "plus")


# families

FAMILY_CFS = {
    (1, 1): "[[2,2*n^2-2*n+3],[-1,-n^4]]",
    (1, 2): "[[8,2*n^4-4*n^3+10*n^2-8*n+3],[-1,-n^8]]",
    (2, 0): "[[3/2,2*n^2-2*n+7],[1,-n^4]]",
    (3, 0): "[[9/2,2*n^5-5*n^4+22*n^3-28*n^2+23*n-7],[1,-n^10]]",
    (4, 0): "[[1,2*n^3-3*n^2+11*n-5],[1,-n^6]]",
    (4, 1): "[[-4,2*n^7-7*n^6+37*n^5-75*n^4+99*n^3-77*n^2+31*n-5],[1,-n^14]]",
    (5, 0): "[[-1/2,2*n^5-5*n^4+22*n^3-28*n^2+15*n-3],[1,-n^10]]",
    (6, 0): "[[1,3],[-1,n^2]]",
    (6, 1): "[[16,5*n^2-5*n+3],[-4,n^6]]",
    (7, 0): "[[1/2,5],[1,n^2]]",
    (7, 1): "[[-32,9*n^4-18*n^3+30*n^2-21*n+5],[16,n^10]]",
    (8, 0): "[[1,6*n-3],[2,n^4]]",
}


@pytest.mark.parametrize("key", sorted(FAMILY_CFS))
def test_family_members(key):
    _, cf = family(*key)
    assert print_cf(cf) == FAMILY_CFS[key]


def test_family_lhs_expansions():
    assert family_lhs(2, 1) == period(Zeta8=1, Zeta6=3, Zeta2=-27)
    assert family_lhs(7, 2) == period(Zeta9=255, Zeta5=-960, Log2=4096)
    assert family_lhs(8, 1) == period(Zeta8=127, Zeta6=-124, Zeta2=64)


def test_family_ranges():
    with pytest.raises(ValueError):
        family(9, 1)
    with pytest.raises(ValueError):
        family(1, 0)


@pytest.mark.parametrize("id", range(1, 9))
def test_closed_form_head_agrees_except_family4_odd_k(id):
    for k in range(FAMILIES[id].kmin, 4):
        _, cf = family(id, k)
        head = closed_form_head(id, k)
        if id == 4 and k % 2:
            assert head == (-cf.a0, cf.b0)
        else:
            assert head == (cf.a0, cf.b0)


@pytest.mark.parametrize("id", range(1, 9))
def test_closed_form_numerator(id):
    k = FAMILIES[id].kmin + 1
    spec = FAMILIES[id]
    q, r = divmod(closed_form_numerator(id, k), spec.P)
    if id == 5:
        assert not r.is_zero()
    else:
        assert r.is_zero() and q == family(id, k)[1].A


@pytest.mark.parametrize("i", range(len(KNOWN_IDENTITIES)))
def test_known_identities_rebuilt(i):
    ex = KNOWN_IDENTITIES[i]
    lhs, cf = build_identity(ex)
    assert lhs == ex.lhs
    assert cf == parse_cf(ex.cf)


def test_degree_eight_tails():
    tails = {print_cf(build_identity(ex)[1]).split(",")[1] for ex in KNOWN_IDENTITIES}
    assert "2*n^8-8*n^7+46*n^6-110*n^5+178*n^4-182*n^3+118*n^2-44*n+7]" in tails
    assert "12*n^7-42*n^6+110*n^5-170*n^4+154*n^3-82*n^2+24*n-3]" in tails


def test_search_multipliers_small():
    assert search_multipliers("plus", [2, 3], 2, 6) == [(2 * X - 1, 2), (2 * X**2 - 2 * X + 1, 3), (3 * X**2 - 3 * X + 1, 2)]


def test_search_multipliers_minus_finds_catalog_and_more():
    found = search_multipliers("minus", [1, 2], 4, 8)
    assert (2 * X - 1, 1) in found and (X**2 - X + 1, 2) in found and (2 * X**2 - 2 * X + 1, 1) in found
    assert (4 * X**3 - 6 * X**2 + 8 * X - 3, 1) in found
    assert (X**4 - 2 * X**3 + 7 * X**2 - 6 * X + 4, 2) in found
