"""Bauer-Muir acceleration of continued fractions.

For a sequence ``r(n)`` put ``R(n) = a(n) + r(n)`` and
``d(n) = r(n) R(n+1) - b(n)``.  The transformed fraction has

* ``A(0) = a(0) + b(0)/R(1)``, ``B(0) = b(0) d(1) / R(1)^2``,
* ``A(1) = (a(1) R(2) + b(1)) / R(1)``,
* ``A(n) = R(n+1) - r(n-1) d(n)/d(n-1)`` for ``n >= 2``,
* ``B(n) = b(n) d(n+1)/d(n)`` for ``n >= 1``,

and its convergents satisfy ``P(n) = p(n+1) + r(n+1) p(n)`` (same for ``Q``).
When ``d`` is a nonzero constant the new tails stay polynomial and the
step can be repeated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .cf_engine import GCF, convergents_of, equivalence_transform
from .exact_arith import PolyQ, RatFunc, as_rat, integer_roots_in

FAMILY_NAMES = ("Log2", "Zeta2", "Zeta2Alt", "Catalan", "Zeta3")


class EssentialAssumptionViolated(ValueError):
    pass


class NoAccelerator(ValueError):
    pass


@dataclass(frozen=True)
class BMStep:
    r: PolyQ
    d: RatFunc
    input: GCF
    output: GCF


def _as_poly(r) -> PolyQ:
    if isinstance(r, PolyQ):
        return r
    if isinstance(r, RatFunc):
        return r.as_poly()
    if isinstance(r, str):
        from .parsing import parse_poly

        return parse_poly(r)
    return PolyQ.const(as_rat(r))


def _raw_terms(cf: GCF, r: PolyQ) -> tuple[Callable, Callable, Callable]:
    """Exact term functions ``A(n), B(n)`` of the transformed fraction and ``d``."""
    a, b = cf.a, cf.b

    def R(n):
        return a(n) + r(n)

    def d(n):
        return r(n) * R(n + 1) - b(n)

    R1 = R(1)

    def A(n):
        if n == 0:
            return a(0) + b(0) / R1
        if n == 1:
            return (a(1) * R(2) + b(1)) / R1
        return R(n + 1) - r(n - 1) * d(n) / d(n - 1)

    def B(n):
        if n == 0:
            return b(0) * d(1) / R1**2
        return b(n) * d(n + 1) / d(n)

    return A, B, d


def _tail_d(cf: GCF, r: PolyQ) -> RatFunc:
    """``d(n)`` as a rational function, valid for ``n >= m``."""
    return r * (cf.tail_a.shift(1) + r.shift(1)) - cf.tail_b


def _check_assumptions(cf: GCF, r: PolyQ) -> RatFunc:
    if cf.a(1) + r(1) == 0:
        raise EssentialAssumptionViolated("R(1) = a(1) + r(1) = 0")
    m = cf.start
    _, _, d = _raw_terms(cf, r)
    for n in range(1, m + 1):
        if d(n) == 0:
            raise EssentialAssumptionViolated(f"d({n}) = 0")
    dt = _tail_d(cf, r)
    if dt.is_zero():
        raise EssentialAssumptionViolated("d(n) is identically zero")
    if not dt.is_constant():
        roots = integer_roots_in(dt.num, m, 10**9)
        if roots:
            raise EssentialAssumptionViolated(f"d({roots[0]}) = 0")
    return dt


def bm_step(cf: GCF, r, clear: bool = True) -> GCF:
    """One Bauer-Muir step with accelerator ``r`` (a polynomial in ``n``).

    With non-constant ``d`` the new tails are rational functions; ``clear``
    rescales them to polynomials by the equivalence ``r'(n) = d(n-1)``.
    """
    r = _as_poly(r)
    if not cf.is_polynomial():
        raise ValueError("bm_step needs polynomial tails")
    dt = _check_assumptions(cf, r)
    m = cf.start
    s = max(m + 1, 2)
    A, B, _ = _raw_terms(cf, r)
    Rt = cf.tail_a + r
    tail_A = Rt.shift(1) - RatFunc(r.shift(-1)) * dt / dt.shift(-1)
    tail_B = cf.tail_b * dt.shift(1) / dt
    prefix = tuple((A(n), B(n)) for n in range(s))
    out = GCF(prefix, tail_A, tail_B)
    if clear and not out.is_polynomial():
        out = equivalence_transform(out, dt.shift(-1), [1] * out.start)
    return out


def bm_check_relation(cf: GCF, r, N: int) -> bool:
    """Check ``R(1) (P(n), Q(n)) = (p(n+1), q(n+1)) + r(n+1) (p(n), q(n))`` for ``2 <= n <= N``.

    With the seeds ``P(0) = A(0)``, ``Q(0) = 1`` the transformed convergents
    carry the constant factor ``1/R(1)``; the identity is exact once it is
    restored.  Uses the unnormalised transformed terms.
    """
    r = _as_poly(r)
    _check_assumptions(cf, r)
    A, B, _ = _raw_terms(cf, r)
    R1 = cf.a(1) + r(1)
    old = convergents_of(cf.a, cf.b, N + 1)
    new = convergents_of(A, B, N)
    for n in range(2, N + 1):
        rn = r(n + 1)
        if R1 * new[n].p != old[n + 1].p + rn * old[n].p or R1 * new[n].q != old[n + 1].q + rn * old[n].q:
            return False
    return True


# solving for accelerators with constant d

def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _univariate_roots(c2: Fraction, c1: Fraction, c0: Fraction) -> list[Fraction] | None:
    """Rational roots of ``c2 t^2 + c1 t + c0``; ``None`` if identically zero."""
    if c2 == 0:
        if c1 == 0:
            return None if c0 == 0 else []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    sq = _rational_sqrt(disc)
    if sq is None:
        return []
    return sorted({(-c1 + sq) / (2 * c2), (-c1 - sq) / (2 * c2)})


class _Eq:
    """Quadratic polynomial in the unknown coefficients of ``r``."""

    __slots__ = ("quad", "lin", "const")

    def __init__(self, quad, lin, const):
        self.quad = {k: v for k, v in quad.items() if v != 0}
        self.lin = {k: v for k, v in lin.items() if v != 0}
        self.const = const

    def unknowns(self) -> set[int]:
        out = set(self.lin)
        for i, j in self.quad:
            out.add(i)
            out.add(j)
        return out

    def substitute(self, var: int, val: Fraction) -> "_Eq":
        quad, lin, const = {}, dict(self.lin), self.const
        for (i, j), c in self.quad.items():
            if i == var and j == var:
                const += c * val * val
            elif i == var or j == var:
                other = j if i == var else i
                lin[other] = lin.get(other, 0) + c * val
            else:
                quad[(i, j)] = quad.get((i, j), 0) + c
        if var in lin:
            const += lin.pop(var) * val
        return _Eq(quad, lin, const)

    def univariate(self, var: int) -> tuple[Fraction, Fraction, Fraction]:
        return self.quad.get((var, var), Fraction(0)), self.lin.get(var, Fraction(0)), self.const


def _equations(A: PolyQ, B: PolyQ, e: int) -> list[_Eq]:
    """Coefficients of ``r(n) (A(n+1) + r(n+1)) - B(n)`` for ``r`` of degree ``e``.

    Index 0 is the constant term ``d``; the rest must vanish.
    """
    A1 = A.shift(1)
    shifted = [PolyQ.x().shift(1) ** j for j in range(e + 1)]
    top = max(2 * e, e + (A.degree if not A.is_zero() else 0), B.degree if not B.is_zero() else 0)
    eqs = []
    for t in range(int(top) + 1):
        quad, lin = {}, {}
        for i in range(e + 1):
            if t - i < 0:
                continue
            for j in range(e + 1):
                c = shifted[j].coeff(t - i)
                if c:
                    key = (min(i, j), max(i, j))
                    quad[key] = quad.get(key, 0) + c
            c = A1.coeff(t - i)
            if c:
                lin[i] = lin.get(i, 0) + c
        eqs.append(_Eq(quad, lin, -B.coeff(t)))
    return eqs


def _solve(eqs: list[_Eq], unknowns: set[int], assign: dict[int, Fraction], lead: int) -> Iterator[dict[int, Fraction]]:
    live = [eq for eq in eqs[1:]]
    for eq in live:
        if not eq.unknowns() and eq.const != 0:
            return
    if not unknowns:
        yield dict(assign)
        return
    # highest-degree equation in exactly one unknown
    for eq in reversed(live):
        us = eq.unknowns()
        if len(us) == 1:
            (var,) = us
            roots = _univariate_roots(*eq.univariate(var))
            if roots is None:
                continue
            for val in roots:
                if var == lead and val == 0:
                    continue
                nxt = [q.substitute(var, val) for q in eqs]
                assign[var] = val
                yield from _solve(nxt, unknowns - {var}, assign, lead)
                del assign[var]
            return
    # an unknown absent from every equation is free; pin it to zero
    mentioned = set().union(*(eq.unknowns() for eq in live)) if live else set()
    free = sorted(unknowns - mentioned)
    if free and free[0] != lead:
        var = free[0]
        nxt = [q.substitute(var, Fraction(0)) for q in eqs]
        assign[var] = Fraction(0)
        yield from _solve(nxt, unknowns - {var}, assign, lead)
        del assign[var]
        return
    raise NotImplementedError("coupled system without a single-unknown equation")


def bm_solve_r(cf: GCF, deg_bound: int | None = None) -> list[PolyQ]:
    """All polynomial accelerators ``r`` with ``deg r <= deg_bound`` and constant nonzero ``d``.

    ``d(n) = r(n) (A(n+1) + r(n+1)) - B(n)`` with ``A, B`` the tails.
    Coefficients are matched from the top degree down; each stage is a
    linear or quadratic equation in one unknown and only rational roots are
    kept.
    """
    A, B = cf.A, cf.B
    if deg_bound is None:
        deg_bound = max(int(A.degree), 3)
    if deg_bound > 6:
        raise ValueError("deg_bound must be at most 6")
    found = set()
    for e in range(deg_bound + 1):
        eqs = _equations(A, B, e)
        for sol in _solve(eqs, set(range(e + 1)), {}, e):
            r = PolyQ([sol[i] for i in range(e + 1)])
            if r.is_zero():
                continue
            d = _tail_d(cf, r)
            if d.is_constant() and not d.is_zero():
                found.add(r)
    return sorted(found, key=_r_key)


def _r_key(r: PolyQ):
    return (r.degree, r.height(), tuple(reversed(r.coeffs)))


def _shape_ok(cf: GCF, out: GCF) -> bool:
    return (
        out.start == 1
        and out.is_polynomial()
        and (out.B == cf.B or out.B == -cf.B)
        and out.A.degree == cf.A.degree
    )


def bm_candidates(cf: GCF, deg_bound: int | None = None) -> list[tuple[PolyQ, GCF]]:
    """Constant-``d`` accelerators whose output keeps the tail shape.

    Each such step usually has an inverse that is also a constant-``d``
    step, so candidates come in pairs.  Larger ``|A(1)|`` against the same
    ``B`` converges faster, so that ranks first; ties go to the smaller
    height of ``r``.
    """
    out = []
    for r in bm_solve_r(cf, deg_bound):
        try:
            new = bm_step(cf, r)
        except (EssentialAssumptionViolated, ValueError, ZeroDivisionError):
            continue
        if _shape_ok(cf, new):
            out.append((r, new))
    out.sort(key=lambda t: (-abs(t[1].A(1)),) + _r_key(t[0]))
    return out


def bm_iterate_steps(cf: GCF, steps: int, deg_bound: int | None = None) -> list[BMStep]:
    if steps < 1:
        raise ValueError("steps must be positive")
    out = []
    cur = cf
    for i in range(steps):
        cands = bm_candidates(cur, deg_bound)
        if not cands:
            raise NoAccelerator(f"no constant-d accelerator at step {i + 1} for {cur}")
        r, new = cands[0]
        out.append(BMStep(r, _tail_d(cur, r), cur, new))
        cur = new
    return out


def bm_iterate(cf: GCF, steps: int, deg_bound: int | None = None) -> list[GCF]:
    """``[cf, step1, ..., step_steps]``: repeated constant-``d`` acceleration."""
    return [cf] + [s.output for s in bm_iterate_steps(cf, steps, deg_bound)]


def accelerated_family(name: str, k: int) -> GCF:
    """Closed form of the ``k``-th accelerated fraction of a named family."""
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = PolyQ.x()
    F = Fraction
    sign = (-1) ** k
    if name == "Log2":
        a0 = sum((F((-1) ** (j - 1), j) for j in range(1, k + 1)), F(0))
        return GCF.simple(a0, PolyQ.const(2 * k + 1), sign, n**2)
    if name == "Zeta2":
        a0 = 2 * sum((F((-1) ** (j - 1), j * j) for j in range(1, k + 1)), F(0))
        return GCF.simple(a0, 2 * n**2 - 2 * n + k * k + k + 1, sign, -(n**4))
    if name == "Zeta2Alt":
        a0 = sum((F(1, j * j) for j in range(1, k + 1)), F(0))
        return GCF.simple(a0, (2 * k + 1) * (2 * n - 1), 2, n**4)
    if name == "Catalan":
        a0 = sum((F((-1) ** (j - 1), (2 * j - 1) ** 2) for j in range(1, k + 1)), F(0))
        return GCF.simple(a0, 8 * n**2 - 8 * n + 4 * k * k + 3, F(sign, 2), -16 * n**4)
    a0 = sum((F(1, j**3) for j in range(1, k + 1)), F(0))
    return GCF.simple(a0, (2 * n - 1) * (n**2 - n + 2 * k * k + 2 * k + 1), 1, -(n**6))
