"""Polynomial multipliers: ``P(x) | x^k P(x+1) +- (x-1)^k P(x-1)``.

When the division is exact with quotient ``R``, the sum
``sum_{n>=1} (+-1)^(n-1) / (n^k P(n) P(n+1))`` has the continued fraction
``[[0, R(n)], [1/P(1)^2, -+n^(2k)]]`` and a partial fraction decomposition
into zeta values (plus ``log 2`` in the alternating case) and a telescoping
rational part.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Literal

from . import hp_numeric
from .cf_engine import GCF, equivalence_transform, euler_transform
from .exact_arith import NotCoprime, PolyQ, RatFunc, ZeroAtIntegerPole, decompose_core, poly_divrem
from .fixed import FixedFloat
from .periods import LOG2, ONE, RationalPeriod, Zeta, zeta_p, zeta_star

Sign = Literal["plus", "minus"]

X = PolyQ.x()


class ConvergenceViolation(ValueError):
    pass


def _check_sign(sign: str) -> int:
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    return 1 if sign == "plus" else -1


def multiplier_numerator(P: PolyQ, k: int, sign: Sign) -> PolyQ:
    s = _check_sign(sign)
    return X**k * P.shift(1) + s * (X - 1) ** k * P.shift(-1)


def divisibility_check(P: PolyQ, k: int, sign: Sign) -> PolyQ | None:
    """``R = (x^k P(x+1) +- (x-1)^k P(x-1)) / P(x)`` if exact, else ``None``."""
    if P.is_zero():
        raise ValueError("P must be nonzero")
    if k < 1:
        raise ValueError("k must be positive")
    q, r = poly_divrem(multiplier_numerator(P, k, sign), P)
    return q if r.is_zero() else None


def multiplier_cf(P: PolyQ, k: int, sign: Sign) -> GCF:
    R = divisibility_check(P, k, sign)
    if R is None:
        raise ValueError(f"P = {P} does not divide the {sign} numerator for k = {k}")
    if P(0) == 0 or P(1) == 0:
        raise ZeroAtIntegerPole("P vanishes at 0 or 1")
    s = _check_sign(sign)
    return GCF.simple(0, R, 1 / P(1) ** 2, -s * X ** (2 * k))


def multiplier_cf_via_euler(P: PolyQ, k: int, sign: Sign) -> GCF:
    """Same CF rebuilt from Euler's transform plus the equivalence ``r = 1/P(n)^2``."""
    s = _check_sign(sign)
    f = RatFunc(s * X**k * P * P.shift(1))
    cf = euler_transform(f, s)
    cf = equivalence_transform(cf, RatFunc(PolyQ.const(1), P * P))
    if s < 0:
        cf = equivalence_transform(cf, -1)
    return cf


@dataclass(frozen=True)
class MultiplierResult:
    P: PolyQ
    k: int
    sign: Sign
    R: PolyQ
    cf: GCF
    period: RationalPeriod
    telescoped: bool


@dataclass(frozen=True)
class CatalogEntry:
    P: PolyQ
    residue: int | None = None
    modulus: int | None = None
    exact_k: int | None = None

    def admissible(self, k: int) -> bool:
        if self.exact_k is not None:
            return k == self.exact_k
        return k % self.modulus == self.residue % self.modulus

    def smallest(self, count: int = 3, kmin: int = 2) -> list[int]:
        if self.exact_k is not None:
            return [self.exact_k] if self.exact_k >= kmin else []
        out, k = [], kmin
        while len(out) < count:
            if self.admissible(k):
                out.append(k)
            k += 1
        return out

    def describe(self) -> str:
        cond = f"k = {self.exact_k}" if self.exact_k is not None else f"k = {self.residue} mod {self.modulus}"
        return f"P(x) = {self.P}, {cond}"


_PLUS = (
    CatalogEntry(PolyQ([-1, 2]), 0, 2),
    CatalogEntry(PolyQ([1, -3, 3]), -1, 3),
    CatalogEntry(PolyQ([1, -2, 2]), -1, 4),
    CatalogEntry(PolyQ([1, -1, 1]), -1, 6),
    CatalogEntry(PolyQ([4, -14, 19, -10, 5]), exact_k=5),
)
_MINUS = (
    CatalogEntry(PolyQ([-1, 2]), 1, 2),
    CatalogEntry(PolyQ([1, -2, 2]), 1, 4),
    CatalogEntry(PolyQ([1, -1, 1]), 2, 6),
)


def catalog(sign: Sign) -> list[CatalogEntry]:
    """Known multiplier polynomials with their admissible exponents."""
    return list(_PLUS if _check_sign(sign) > 0 else _MINUS)


def decompose_period(P: PolyQ, k: int, sign: Sign) -> tuple[RationalPeriod, bool, PolyQ]:
    """Express ``sum (+-1)^(n-1)/(n^k P(n) P(n+1))`` over the basis.

    Returns ``(period, telescoped, residual)``; ``residual`` is
    ``U(x) +- V(x+1)`` and is zero exactly when the rational part telescopes.
    When it does not, the period omits that part.
    """
    s = _check_sign(sign)
    c, U, V = decompose_core(P, k)
    if s > 0 and c[0] != 0:
        raise ConvergenceViolation(f"c_1 = {c[0]} makes the plus-sign sum diverge")
    terms: list[RationalPeriod] = []
    for j, cj in enumerate(c, start=1):
        if cj == 0:
            continue
        if s > 0:
            terms.append(zeta_p(j) * cj)
        elif j == 1:
            terms.append(RationalPeriod({LOG2: cj}))
        else:
            terms.append(RationalPeriod({Zeta(j): cj * (1 - Fraction(2) ** (1 - j))}))
    residual = U + s * V.shift(1)
    telescoped = residual.is_zero()
    if telescoped:
        terms.append(RationalPeriod({ONE: V(1) / P(1)}))
    out = RationalPeriod()
    for t in terms:
        out = out + t
    return out, telescoped, residual


def multiplier(P: PolyQ, k: int, sign: Sign) -> MultiplierResult:
    cf = multiplier_cf(P, k, sign)
    per, tele, _ = decompose_period(P, k, sign)
    return MultiplierResult(P, k, sign, cf.A, cf, per, tele)


# multiplier families

@dataclass(frozen=True)
class FamilySpec:
    id: int
    P: PolyQ
    sign: Sign
    kmin: int

    def exponent(self, k: int) -> int:
        return {1: 2 * k, 2: 6 * k + 2, 3: 6 * k + 5, 4: 4 * k + 3,
                5: 6 * k + 5, 6: 2 * k + 1, 7: 4 * k + 1, 8: 6 * k + 2}[self.id]


FAMILIES = {
    1: FamilySpec(1, PolyQ([-1, 2]), "plus", 1),
    2: FamilySpec(2, PolyQ([1, -3, 3]), "plus", 0),
    3: FamilySpec(3, PolyQ([1, -3, 3]), "plus", 0),
    4: FamilySpec(4, PolyQ([1, -2, 2]), "plus", 0),
    5: FamilySpec(5, PolyQ([1, -1, 1]), "plus", 0),
    6: FamilySpec(6, PolyQ([-1, 2]), "minus", 0),
    7: FamilySpec(7, PolyQ([1, -2, 2]), "minus", 0),
    8: FamilySpec(8, PolyQ([1, -1, 1]), "minus", 0),
}


def _check_family(id: int, k: int) -> FamilySpec:
    if id not in FAMILIES:
        raise ValueError(f"family id must be 1..8, got {id}")
    spec = FAMILIES[id]
    if k < spec.kmin:
        raise ValueError(f"family {id} needs k >= {spec.kmin}")
    return spec


def family_lhs(id: int, k: int) -> RationalPeriod:
    """The linear combination on the left of family ``id``, expanded."""
    _check_family(id, k)
    out = RationalPeriod()
    if id == 1:
        for j in range(k):
            out += zeta_p(2 * (k - j)) * 4**j
    elif id in (2, 3):
        hi, lo = (2, 0) if id == 2 else (5, 3)
        for j in range(k + 1):
            out += (zeta_p(6 * (k - j) + hi) + zeta_p(6 * (k - j) + lo) * 3) * (-27) ** j
    elif id == 4:
        for j in range(k + 1):
            out += zeta_p(4 * (k - j) + 3) * (-4) ** j
    elif id == 5:
        for j in range(k + 1):
            out += zeta_p(6 * (k - j) + 5) - zeta_p(6 * (k - j) + 3)
    elif id == 6:
        for j in range(k + 1):
            out += zeta_star(2 * (k - j) + 1) * 16**j
    elif id == 7:
        for j in range(k + 1):
            out += zeta_star(4 * (k - j) + 1) * (-64) ** j
    else:
        for j in range(k + 1):
            out += (zeta_star(6 * (k - j) + 2) - zeta_star(6 * (k - j)) * 4) * 64**j
    return out


def closed_form_head(id: int, k: int) -> tuple[Fraction, Fraction]:
    """``(a(0), b(0))`` from the closed-form expressions of each family.

    For family 4 at odd ``k`` the sign of ``a(0)`` here is the quoted one and
    is wrong; :func:`family` solves the head from the decomposition instead.
    """
    _check_family(id, k)
    F = Fraction
    return {
        1: lambda: (F(2) ** (2 * k - 1), F(-1)),
        2: lambda: (-F(-3) ** (3 * k + 1) / 2, F(1)),
        3: lambda: (F(-3) ** (3 * k + 2) / 2, F(1)),
        4: lambda: (F(4) ** k, F(1)),
        5: lambda: (F(-1, 2), F(1)),
        6: lambda: (F(2) ** (4 * k), -F(2) ** (2 * k)),
        7: lambda: ((-1) ** k * F(2) ** (6 * k - 1), F(2) ** (4 * k)),
        8: lambda: (F(2) ** (6 * k), F(2) ** (6 * k + 1)),
    }[id]()


def closed_form_numerator(id: int, k: int) -> PolyQ:
    """Closed-form numerator of ``R_id`` (the family-5 factor as commonly quoted does not divide)."""
    spec = _check_family(id, k)
    K = spec.exponent(k)
    s = 1 if spec.sign == "plus" else -1
    quoted_minus = {
        1: PolyQ([-3, 2]),
        2: PolyQ([7, -9, 3]),
        3: PolyQ([7, -9, 3]),
        4: PolyQ([5, -6, 2]),
        5: PolyQ([3, -3, 0, 1]),  # quoted as x^3-3x+3; x^2-3x+3 is what divides
        6: PolyQ([-3, 2]),
        7: PolyQ([5, -6, 2]),
        8: PolyQ([3, -3, 1]),
    }[id]
    return X**K * spec.P.shift(1) + s * (X - 1) ** K * quoted_minus


def head_from_decomposition(lhs: RationalPeriod, S: RationalPeriod, P1: Fraction) -> tuple[Fraction, Fraction]:
    """Solve ``lhs = a0 + b0 P(1)^2 S`` for ``(a0, b0)``."""
    core_l, core_s = lhs.without_constant(), S.without_constant()
    if not len(core_s):
        raise ValueError("sum has no transcendental part")
    basis, cs = next(iter(core_s))
    ratio = core_l[basis] / cs
    if core_l != core_s * ratio or ratio == 0:
        raise ValueError(f"{lhs} is not an affine image of {S}")
    b0 = ratio / P1**2
    a0 = lhs.constant_part() - ratio * S.constant_part()
    return a0, b0


def family(id: int, k: int) -> tuple[RationalPeriod, GCF]:
    """``(lhs, cf)`` for member ``k`` of family ``id``.

    The tail is obtained by exact division; ``a(0), b(0)`` are solved from the
    partial fraction decomposition, which agrees with the closed-form constants
    except where those carry a sign slip (see :func:`closed_form_head`).
    """
    spec = _check_family(id, k)
    K = spec.exponent(k)
    lhs = family_lhs(id, k)
    base = multiplier_cf(spec.P, K, spec.sign)
    S, telescoped, _ = decompose_period(spec.P, K, spec.sign)
    if not telescoped:
        raise ArithmeticError(f"family {id}, k={k}: rational part does not telescope")
    a0, b0 = head_from_decomposition(lhs, S, spec.P(1))
    return lhs, base.with_head(a0, b0)


@dataclass(frozen=True)
class KnownIdentity:
    lhs: RationalPeriod
    cf: str
    source: tuple  # ("family", id, k, factor) or ("multiplier", P, k, sign, a0, b0)


def _ex_fam(lhs, cf, id, k, factor):
    return KnownIdentity(RationalPeriod(lhs), cf, ("family", id, k, Fraction(factor)))


KNOWN_IDENTITIES: tuple[KnownIdentity, ...] = (
    _ex_fam({Zeta(4): 1, Zeta(2): 4}, "[[8,2n^4-4n^3+10n^2-8n+3],[-1,-n^8]]", 1, 2, 1),
    _ex_fam({Zeta(2): 27, Zeta(6): -3, Zeta(8): -1},
            "[[81/2,2n^8-8n^7+46n^6-110n^5+178n^4-182n^3+118n^2-44n+7],[-1,-n^16]]", 2, 1, -1),
    _ex_fam({Zeta(5): 1, Zeta(3): 3}, "[[9/2,2n^5-5n^4+22n^3-28n^2+23n-7],[1,-n^10]]", 3, 0, 1),
    _ex_fam({Zeta(3): 4, Zeta(7): -1},
            "[[4,2n^7-7n^6+37n^5-75n^4+99n^3-77n^2+31n-5],[-1,-n^14]]", 4, 1, -1),
    _ex_fam({Zeta(3): 1, Zeta(5): -1}, "[[1/2,2n^5-5n^4+22n^3-28n^2+15n-3],[-1,-n^10]]", 5, 0, -1),
    KnownIdentity(
        RationalPeriod({Zeta(5): 4, Zeta(3): 11}),
        "[[273/16,2n^5-5n^4+42n^3-58n^2+45n-13],[4,-n^10]]",
        ("multiplier", PolyQ([4, -14, 19, -10, 5]), 5, "plus"),
    ),
    _ex_fam({Zeta(3): 3, LOG2: 16}, "[[16,5n^2-5n+3],[-4,n^6]]", 6, 1, 1),
    _ex_fam({Zeta(5): 15, Zeta(3): 48, LOG2: 256}, "[[256,7n^4-14n^3+18n^2-11n+3],[-16,n^10]]", 6, 2, 1),
    _ex_fam({LOG2: 64, Zeta(5): -15}, "[[32,9n^4-18n^3+30n^2-21n+5],[-16,n^10]]", 7, 1, -1),
    _ex_fam({Zeta(8): 127, Zeta(6): -124, Zeta(2): 64},
            "[[64,12n^7-42n^6+110n^5-170n^4+154n^3-82n^2+24n-3],[128,n^16]]", 8, 1, 1),
)


def build_identity(ex: KnownIdentity) -> tuple[RationalPeriod, GCF]:
    """Regenerate a known identity from its family (or multiplier) source."""
    if ex.source[0] == "family":
        _, id, k, factor = ex.source
        lhs, cf = family(id, k)
        return lhs * factor, cf.affine(factor)
    _, P, k, sign = ex.source
    base = multiplier_cf(P, k, sign)
    S, telescoped, _ = decompose_period(P, k, sign)
    if not telescoped:
        raise ArithmeticError("rational part does not telescope")
    a0, b0 = head_from_decomposition(ex.lhs, S, P(1))
    return ex.lhs, base.with_head(a0, b0)


def period_value(p: RationalPeriod, prec: int = 30) -> FixedFloat:
    return hp_numeric.period_value(p, prec)


def search_multipliers(sign: Sign, ks, max_degree: int = 4, height: int = 20) -> list[tuple[PolyQ, int]]:
    """Brute-force multipliers of degree ``1..max_degree`` and coefficient height ``<= height``.

    Candidates are restricted to ``P(1-x) = (-1)^deg P(x)`` (every multiplier
    has this symmetry), i.e. polynomials in ``u = x^2 - x`` times
    ``(2x-1)`` for odd degree.  Primitive integer polynomials with positive
    leading coefficient only.
    """
    _check_sign(sign)
    u = X * X - X
    found = []
    seen = set()
    for deg in range(1, max_degree + 1):
        half = deg // 2
        base = PolyQ([-1, 2]) if deg % 2 else PolyQ.const(1)
        lead_bound = height if deg % 2 == 0 else height // 2
        for coeffs in product(range(-height, height + 1), repeat=half):
            for lead in range(1, lead_bound + 1):
                Q = PolyQ.const(0)
                for i, c in enumerate(coeffs):
                    Q = Q + c * u**i
                Q = Q + lead * u**half
                P = base * Q
                ints = [int(c) for c in P.coeffs if c.denominator == 1]
                if len(ints) != len(P.coeffs) or max(abs(c) for c in ints) > height:
                    continue
                g = 0
                for c in ints:
                    g = gcd(g, c)
                if g != 1 or P in seen:
                    continue
                seen.add(P)
                if P(0) == 0 or P(1) == 0:
                    continue
                for k in ks:
                    if divisibility_check(P, k, sign) is not None:
                        found.append((P, k))
    return found


__all__ = [
    "CatalogEntry",
    "ConvergenceViolation",
    "FAMILIES",
    "MultiplierResult",
    "NotCoprime",
    "KNOWN_IDENTITIES",
    "build_identity",
    "catalog",
    "closed_form_head",
    "closed_form_numerator",
    "decompose_period",
    "divisibility_check",
    "family",
    "family_lhs",
    "multiplier",
    "multiplier_cf",
    "multiplier_cf_via_euler",
    "period_value",
    "search_multipliers",
]
