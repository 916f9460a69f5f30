"""High-precision constants, Hurwitz zeta, and polygamma continued fractions.

Every constant is computed here from elementary series so it stays independent
of the continued fractions it is used to check.  Catalan's constant and its
conductor-3 analogue come from Hurwitz zeta differences:
``G = (zeta(2,1/4) - zeta(2,3/4))/16`` and ``G3 = (zeta(2,1/3) - zeta(2,2/3))/9``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cf_engine import GCF, equivalence_transform, eval_cf_numeric, forward_values, parse_cf, print_cf
from .exact_arith import PolyQ, as_rat, bernoulli
from .fixed import GUARD_DIGITS, FixedFloat, _rdiv
from .periods import (
    CATALAN,
    G3,
    LOG2,
    ONE,
    PI3,
    PI3_OVER_SQRT3,
    Basis,
    RationalPeriod,
    Zeta,
)


class DomainViolation(ValueError):
    pass


def _S(prec: int) -> tuple[int, int]:
    w = prec + GUARD_DIGITS
    return w, 10**w


def hurwitz_zeta(s: int, a, prec: int = 30, cutoff: int | None = None) -> FixedFloat:
    """``sum_{n>=0} (n+a)^-s`` by direct summation plus an Euler-Maclaurin tail."""
    a = as_rat(a)
    if s < 2:
        raise ValueError("s must be at least 2")
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    w, S = _S(prec)
    M = cutoff if cutoff is not None else max(prec, 30)
    p, q = a.numerator, a.denominator
    qs = q**s
    total = 0
    for n in range(M):
        total += _rdiv(S * qs, (n * q + p) ** s)
    x = a + M
    tail = x ** (1 - s) / (s - 1) + x ** (-s) / 2
    eps = Fraction(1, 10 ** (w + 2))
    rising = Fraction(s)  # s (s+1) ... (s+2j-2)
    xpow = x ** (-s - 1)
    fact = Fraction(2)  # (2j)!
    max_terms = max(2 * prec // 3, 10)
    for j in range(1, max_terms + 1):
        term = bernoulli(2 * j) / fact * rising * xpow
        tail += term
        if abs(term) < eps:
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow /= x * x
        fact *= (2 * j + 1) * (2 * j + 2)
    total += _rdiv(tail.numerator * S, tail.denominator)
    return FixedFloat(total, w, prec)


def _atan_inv(x: int, S: int) -> int:
    """``S * atan(1/x)`` for integer ``x > 1``."""
    total, k = 0, 0
    term = S // x
    x2 = x * x
    while term:
        total += term // (2 * k + 1) if k % 2 == 0 else -(term // (2 * k + 1))
        term //= x2
        k += 1
    return total


@lru_cache(maxsize=None)
def pi_fixed(prec: int) -> FixedFloat:
    """Machin: ``pi = 16 atan(1/5) - 4 atan(1/239)``."""
    w, S = _S(prec)
    extra = 10**5
    m = 16 * _atan_inv(5, S * extra) - 4 * _atan_inv(239, S * extra)
    return FixedFloat(_rdiv(m, extra), w, prec)


@lru_cache(maxsize=None)
def log2_fixed(prec: int) -> FixedFloat:
    """``log 2 = sum_{n>=1} 1/(n 2^n)``."""
    w, S = _S(prec)
    extra = 10**5
    total, n, pw = 0, 1, 2
    while True:
        term = S * extra // (n * pw)
        if term == 0:
            break
        total += term
        n += 1
        pw <<= 1
    return FixedFloat(_rdiv(total, extra), w, prec)


def log2_alternating(prec: int) -> FixedFloat:
    """``log 2`` from ``sum (-1)^k/(k+1)`` with Chebyshev-weighted acceleration.

    Exact rational arithmetic; the error is below ``2 / (3 + sqrt 8)^n``.
    """
    w, _ = _S(prec)
    n = math.ceil((w + 2) / math.log10(3 + math.sqrt(8))) + 1
    # d = ((3+sqrt8)^n + (3-sqrt8)^n) / 2 is an integer: track u + v sqrt8
    u, v = 1, 0
    for _ in range(n):
        u, v = 3 * u + 8 * v, u + 3 * v
    d = u  # the sqrt8 parts cancel in the symmetric sum
    b, c, s = Fraction(-1), Fraction(-d), Fraction(0)
    for k in range(n):
        c = b - c
        s += c / (k + 1)
        b = b * (k + n) * (k - n) / ((k + Fraction(1, 2)) * (k + 1))
    return FixedFloat.from_fraction(s / d, prec)


@lru_cache(maxsize=None)
def sqrt3_fixed(prec: int) -> FixedFloat:
    w, S = _S(prec)
    return FixedFloat(math.isqrt(3 * S * S), w, prec)


@lru_cache(maxsize=None)
def _constant(b: Basis, prec: int) -> FixedFloat:
    if b.kind == "One":
        return FixedFloat.from_fraction(1, prec)
    if b.kind == "Zeta":
        return hurwitz_zeta(b.k, 1, prec)
    if b.kind == "Log2":
        return log2_fixed(prec)
    if b.kind == "Catalan":
        return (hurwitz_zeta(2, Fraction(1, 4), prec) - hurwitz_zeta(2, Fraction(3, 4), prec)) / 16
    if b.kind == "G3":
        return (hurwitz_zeta(2, Fraction(1, 3), prec) - hurwitz_zeta(2, Fraction(2, 3), prec)) / 9
    pi = pi_fixed(prec)
    pi3 = pi * pi * pi
    if b.kind == "Pi3":
        return pi3
    return pi3 / sqrt3_fixed(prec)


def constant(name, prec: int = 30) -> FixedFloat:
    """Value of a basis constant (``Basis`` or its tag) to ``prec`` digits."""
    if prec < 10:
        raise ValueError("prec must be at least 10")
    b = name if isinstance(name, Basis) else Basis.from_tag(name)
    return _constant(b, prec)


def period_value(p: RationalPeriod, prec: int = 30) -> FixedFloat:
    total = FixedFloat.zero(prec)
    for b, c in p:
        total = total + constant(b, prec) * c
    return total


# polygamma

_ALLOWED_M = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class PsiSpec:
    r: int
    m: int
    order: int
    shift: int = 0

    def __post_init__(self):
        if self.m not in _ALLOWED_M:
            raise DomainViolation(f"m = {self.m} not in {_ALLOWED_M}")
        if not ((1 <= self.r < self.m and math.gcd(self.r, self.m) == 1) or self.r == self.m == 1):
            raise DomainViolation(f"bad residue {self.r}/{self.m}")
        if self.order not in (1, 2):
            raise DomainViolation("order must be 1 or 2")
        if self.shift < 0:
            raise DomainViolation("shift must be nonnegative")
        if self.z + self.shift <= Fraction(1, 2):
            raise DomainViolation(f"z + shift = {self.z + self.shift} must exceed 1/2")

    @property
    def z(self) -> Fraction:
        return Fraction(self.r, self.m)


def psi_cf(spec: PsiSpec) -> GCF:
    """Shifted continued fraction for ``psi'(z)`` or ``psi''(z)``."""
    z, k = spec.z, spec.shift
    n = PolyQ.x()
    odd = 2 * n - 1
    if spec.order == 1:
        a0 = sum((1 / (z + j) ** 2 for j in range(k)), Fraction(0))
        return GCF.simple(a0, (2 * z + 2 * k - 1) * odd, 2, n**4)
    zk = z + k
    a0 = -2 * sum((1 / (z + j) ** 3 for j in range(k)), Fraction(0))
    return GCF.simple(a0, odd * (n * n - n + 1 + 2 * zk * (zk - 1)), -2, -(n**6))


def psi_value(r: int, m: int, order: int, prec: int = 30) -> FixedFloat:
    """``psi'(r/m) = zeta(2, r/m)`` or ``psi''(r/m) = -2 zeta(3, r/m)``."""
    z = Fraction(r, m)
    if order == 1:
        return hurwitz_zeta(2, z, prec)
    if order == 2:
        return hurwitz_zeta(3, z, prec) * -2
    raise ValueError("order must be 1 or 2")


_Z2, _Z3 = Zeta(2), Zeta(3)
F = Fraction
PSI_TABLE: dict[tuple[int, int, int], RationalPeriod] = {
    (1, 1, 1): RationalPeriod({_Z2: 1}),
    (1, 2, 1): RationalPeriod({_Z2: 3}),
    (1, 3, 1): RationalPeriod({_Z2: 4, G3: F(9, 2)}),
    (2, 3, 1): RationalPeriod({_Z2: 4, G3: F(-9, 2)}),
    (1, 4, 1): RationalPeriod({_Z2: 6, CATALAN: 8}),
    (3, 4, 1): RationalPeriod({_Z2: 6, CATALAN: -8}),
    (1, 6, 1): RationalPeriod({_Z2: 12, G3: F(45, 2)}),
    (5, 6, 1): RationalPeriod({_Z2: 12, G3: F(-45, 2)}),
    (1, 1, 2): RationalPeriod({_Z3: -2}),
    (1, 2, 2): RationalPeriod({_Z3: -14}),
    (1, 3, 2): RationalPeriod({_Z3: -26, PI3_OVER_SQRT3: F(-4, 3)}),
    (2, 3, 2): RationalPeriod({_Z3: -26, PI3_OVER_SQRT3: F(4, 3)}),
    (1, 4, 2): RationalPeriod({_Z3: -56, PI3: -2}),
    (3, 4, 2): RationalPeriod({_Z3: -56, PI3: 2}),
    (1, 6, 2): RationalPeriod({_Z3: -182, PI3_OVER_SQRT3: -12}),
    (5, 6, 2): RationalPeriod({_Z3: -182, PI3_OVER_SQRT3: 12}),
}
TABLE_ROWS = [(1, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6)]


def psi_table(r: int, m: int, order: int) -> RationalPeriod:
    try:
        return PSI_TABLE[(r, m, order)]
    except KeyError:
        raise KeyError(f"no table row for psi^({order})({r}/{m})") from None


@dataclass(frozen=True)
class PsiIdentity:
    """A reference identity ``lhs = cf`` obtained as
    ``factor * psi^(order)(r/m)`` through the CF with the given shift, rescaled
    by the constant equivalence ``scale``."""

    name: str
    lhs: RationalPeriod
    r: int
    m: int
    order: int
    shift: int
    scale: int
    factor: Fraction
    target: str

    def derived_cf(self) -> GCF:
        cf = psi_cf(PsiSpec(self.r, self.m, self.order, self.shift))
        cf = equivalence_transform(cf, self.scale)
        return cf.affine(self.factor)


def _pid(name, lhs, r, m, order, shift, scale, factor, target):
    return PsiIdentity(name, RationalPeriod(lhs), r, m, order, shift, scale, Fraction(factor), target)


PSI_IDENTITIES: tuple[PsiIdentity, ...] = (
    _pid("8zeta(2)-9G3", {_Z2: 8, G3: -9}, 2, 3, 1, 0, 3, 2, "[[0,2n-1],[12,9n^4]]"),
    _pid("8zeta(2)+9G3", {_Z2: 8, G3: 9}, 1, 3, 1, 1, 3, 2, "[[18,10n-5],[12,9n^4]]"),
    _pid("3zeta(2)-4G", {_Z2: 3, CATALAN: -4}, 3, 4, 1, 0, 2, F(1, 2), "[[0,2n-1],[2,4n^4]]"),
    _pid("3zeta(2)+4G", {_Z2: 3, CATALAN: 4}, 1, 4, 1, 1, 2, F(1, 2), "[[8,6n-3],[2,4n^4]]"),
    _pid("8zeta(2)-15G3", {_Z2: 8, G3: -15}, 5, 6, 1, 0, 3, F(2, 3), "[[0,4n-2],[4,9n^4]]"),
    _pid("8zeta(2)+15G3", {_Z2: 8, G3: 15}, 1, 6, 1, 1, 3, F(2, 3), "[[24,8n-4],[4,9n^4]]"),
    _pid("39zeta(3)-2pi^3/sqrt(3)", {_Z3: 39, PI3_OVER_SQRT3: -2}, 2, 3, 2, 0, 9, F(-3, 2),
         "[[0,(2n-1)(9n^2-9n+5)],[27,-81n^6]]"),
    _pid("39zeta(3)+2pi^3/sqrt(3)", {_Z3: 39, PI3_OVER_SQRT3: 2}, 1, 3, 2, 1, 9, F(-3, 2),
         "[[81,(2n-1)(9n^2-9n+17)],[27,-81n^6]]"),
    _pid("28zeta(3)-pi^3", {_Z3: 28, PI3: -1}, 3, 4, 2, 0, 8, F(-1, 2),
         "[[0,(2n-1)(8n^2-8n+5)],[8,-64n^6]]"),
    _pid("28zeta(3)+pi^3", {_Z3: 28, PI3: 1}, 1, 4, 2, 1, 8, F(-1, 2),
         "[[64,(2n-1)(8n^2-8n+13)],[8,-64n^6]]"),
    _pid("91zeta(3)-6pi^3/sqrt(3)", {_Z3: 91, PI3_OVER_SQRT3: -6}, 5, 6, 2, 0, 9, F(-1, 2),
         "[[0,(2n-1)(9n^2-9n+13/2)],[9,-81n^6]]"),
    _pid("91zeta(3)+6pi^3/sqrt(3)", {_Z3: 91, PI3_OVER_SQRT3: 6}, 1, 6, 2, 1, 9, F(-1, 2),
         "[[216,(2n-1)(9n^2-9n+25/2)],[9,-81n^6]]"),
)


def dynamic_tolerance(err_est: FixedFloat, floor=Fraction(1, 10**4)) -> Fraction:
    return max(Fraction(floor), 100 * err_est.to_fraction())


def check_identity(name: str, lhs: RationalPeriod, cf: GCF, prec: int, depth: int, floor=Fraction(1, 10**4)) -> dict:
    """Compare a CF numerically against the value of ``lhs``."""
    value, err = eval_cf_numeric(cf, depth, prec)
    target = period_value(lhs, prec)
    error = abs(value - target)
    tol = dynamic_tolerance(err, floor)
    return {
        "identity": name,
        "lhs_period": lhs.to_json(),
        "cf": print_cf(cf),
        "depth": depth,
        "value": value.decimal_str(min(prec, 25)),
        "error": error.sci_str(),
        "err_est": err.sci_str(),
        "tolerance": f"{float(tol):.3e}",
        "pass": error.to_fraction() <= tol,
    }


def extrapolated_error(lhs: RationalPeriod, cf: GCF, prec: int, depth: int) -> dict:
    """Richardson estimate of the limit from depths ``N/4, N/2, N``.

    ``N`` is ``depth`` rounded down to a multiple of 8 so all three depths
    share a parity (alternating fractions need that).

    Assumes ``x(N) ~ L + C N^-alpha``; the three same-parity convergents
    fix ``alpha`` and ``L``.  ``ok`` means the extrapolated limit is within
    1% of the size of the correction (or within ``10^-(prec-5)``).
    """
    N = depth - depth % 8
    if N < 16:
        raise ValueError("depth must be at least 16")
    vals = forward_values(cf, [N // 4, N // 2, N], prec + 10)
    x = [Fraction(*vals[d]) for d in (N // 4, N // 2, N)]
    d1, d2 = x[1] - x[0], x[2] - x[1]
    target = period_value(lhs, prec).to_fraction()
    if d2 == 0 or d1 == 0 or (d1 > 0) != (d2 > 0):
        alpha, limit = math.inf, x[2]
    else:
        alpha = math.log2(d1 / d2)
        limit = x[2] + d2 / (Fraction(2**alpha).limit_denominator(10**12) - 1)
    correction = abs(limit - x[2])
    err = abs(limit - target)
    ok = err <= max(correction / 100, Fraction(1, 10 ** max(prec - 5, 1)))
    return {"alpha": alpha, "correction": float(correction), "error": float(err), "ok": ok}


def psi_identity_suite(prec: int = 30, depth: int = 2000, floor=Fraction(1, 10**4)) -> list[dict]:
    """Check all twelve reference psi'/psi'' identities.

    Each row also records whether the CF derived from the shifted polygamma CF
    coincides with the reference form, and a Richardson-extrapolated error for
    the slowly converging rows (informational; ``pass`` uses the dynamic
    tolerance only).
    """
    rows = []
    for ident in PSI_IDENTITIES:
        target = parse_cf(ident.target)
        row = check_identity(ident.name, ident.lhs, target, prec, depth, floor)
        row["derived_matches_target"] = ident.derived_cf() == target
        row["pass"] = row["pass"] and row["derived_matches_target"]
        ext = extrapolated_error(ident.lhs, target, prec, depth)
        row["extrapolated_error"] = f"{ext['error']:.3e}"
        row["extrapolated_ok"] = ext["ok"]
        row["rate"] = round(ext["alpha"], 3) if math.isfinite(ext["alpha"]) else None
        rows.append(row)
    return rows


NEGATIVE_CONTROL = "91zeta(3)-6pi^3/sqrt(3)"


def psi_negative_control(prec: int = 30, depth: int = 2000) -> dict:
    """A reference identity with ``b(0)`` perturbed by 1; expected to fail."""
    ident = next(i for i in PSI_IDENTITIES if i.name == NEGATIVE_CONTROL)
    cf = parse_cf(ident.target)
    bad = cf.with_head(cf.a0, cf.b0 + 1)
    return check_identity(ident.name + " [b(0)+1]", ident.lhs, bad, prec, depth)
