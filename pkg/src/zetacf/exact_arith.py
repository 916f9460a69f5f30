"""Exact arithmetic over the rationals.

Scalars are :class:`fractions.Fraction` (aliased ``Rat``); polynomials are dense
tuples of coefficients in ascending degree.  Everything here is immutable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

#: degree of the zero polynomial
ZERO_DEGREE = -math.inf


class NotCoprime(ValueError):
    pass


class ZeroAtIntegerPole(ValueError):
    pass


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to a rational")


def format_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class PolyQ:
    """Dense univariate polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are stripped so
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_int_coeffs")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._int_coeffs = None

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> "PolyQ":
        return cls([c])

    @classmethod
    def x(cls) -> "PolyQ":
        return cls([0, 1])

    @classmethod
    def monomial(cls, deg: int, c: Scalar = 1) -> "PolyQ":
        return cls([0] * deg + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "PolyQ":
        out = cls.const(1)
        for r in roots:
            out = out * cls([-as_rat(r), 1])
        return out

    # basic properties
    @property
    def degree(self):
        """Degree as an ``int``; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        lc = self.lead
        return PolyQ(c / lc for c in self.coeffs)

    def height(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=Fraction(0))

    # arithmetic
    def __add__(self, other) -> "PolyQ":
        other = _to_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other) -> "PolyQ":
        other = _to_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyQ":
        return (-self) + other

    def __mul__(self, other) -> "PolyQ":
        other = _to_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyQ":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = PolyQ.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other) -> tuple["PolyQ", "PolyQ"]:
        return poly_divrem(self, _to_poly(other))

    def __floordiv__(self, other) -> "PolyQ":
        return poly_divrem(self, _to_poly(other))[0]

    def __mod__(self, other) -> "PolyQ":
        return poly_divrem(self, _to_poly(other))[1]

    def __eq__(self, other) -> bool:
        other = _to_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("PolyQ", self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # evaluation and composition
    def __call__(self, x):
        if isinstance(x, PolyQ):
            return self.compose(x)
        if isinstance(x, int):
            ic = self.int_coeffs()
            if ic is not None:
                den, nums = ic
                acc = 0
                for c in reversed(nums):
                    acc = acc * x + c
                return Fraction(acc, den)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def int_coeffs(self):
        """``(D, ints)`` with ``self = ints / D`` and ``D`` the lcm of denominators."""
        if self._int_coeffs is None:
            den = 1
            for c in self.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
            self._int_coeffs = (den, tuple(int(c * den) for c in self.coeffs))
        return self._int_coeffs

    def compose(self, inner: "PolyQ") -> "PolyQ":
        acc = PolyQ()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, c: Scalar) -> "PolyQ":
        """The polynomial ``x -> self(x + c)``."""
        return self.compose(PolyQ([c, 1]))

    def reflect(self) -> "PolyQ":
        """The polynomial ``x -> self(-x)``."""
        return PolyQ(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def derivative(self) -> "PolyQ":
        return PolyQ(i * c for i, c in enumerate(self.coeffs) if i)

    # printing
    def format(self, var: str = "n") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = format_rat(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{format_rat(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self) -> str:
        return self.format("x")

    def __repr__(self) -> str:
        return f"PolyQ({self.format('x')!r})"


def _to_poly(value):
    if isinstance(value, PolyQ):
        return value
    if isinstance(value, (int, Fraction)):
        return PolyQ.const(value)
    return NotImplemented


def poly(coeffs: Sequence[Scalar]) -> PolyQ:
    """Build a polynomial from coefficients in ascending degree."""
    return PolyQ(coeffs)


def poly_eval(P: PolyQ, x: Scalar) -> Fraction:
    return P(as_rat(x))


def poly_divrem(A: PolyQ, B: PolyQ) -> tuple[PolyQ, PolyQ]:
    """Euclidean division ``A = B*Q + R`` with ``deg R < deg B``."""
    if B.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(A.coeffs)
    db = len(B.coeffs) - 1
    lb = B.lead
    if len(rem) - 1 < db:
        return PolyQ(), A
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = c / lb
        quot[i - db] = q
        for j, b in enumerate(B.coeffs):
            rem[i - db + j] -= q * b
    return PolyQ(quot), PolyQ(rem[:db])


def poly_gcd(A: PolyQ, B: PolyQ) -> PolyQ:
    while not B.is_zero():
        A, B = B, poly_divrem(A, B)[1]
    return A.monic()


def ext_euclid(A: PolyQ, B: PolyQ) -> tuple[PolyQ, PolyQ, PolyQ]:
    """Return ``(g, U0, V0)`` with ``U0*A + V0*B = g`` and ``g`` the monic gcd."""
    if A.is_zero() and B.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = A, B
    s0, s1 = PolyQ.const(1), PolyQ()
    t0, t1 = PolyQ(), PolyQ.const(1)
    while not r1.is_zero():
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lead
    return r0 * (1 / lc), s0 * (1 / lc), t0 * (1 / lc)


def poly_lcm(A: PolyQ, B: PolyQ) -> PolyQ:
    if A.is_zero() or B.is_zero():
        return PolyQ()
    return (A * B // poly_gcd(A, B)).monic()


def integer_roots_in(P: PolyQ, lo: int, hi: int) -> list[int]:
    """Integer roots of ``P`` in ``[lo, hi]`` (``P`` nonzero)."""
    if P.is_zero():
        raise ValueError("zero polynomial has every integer as a root")
    if P.is_constant():
        return []
    lead = abs(P.lead)
    bound = 1 + max(abs(c) / lead for c in P.coeffs[:-1])
    top = min(hi, math.floor(bound))
    bot = max(lo, -math.floor(bound))
    return [n for n in range(bot, top + 1) if P(n) == 0]


class RatFunc:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _to_poly(num) if not isinstance(num, PolyQ) else num
        den = PolyQ.const(1) if den is None else (_to_poly(den) if not isinstance(den, PolyQ) else den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = PolyQ(), PolyQ.const(1)
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num // g, den // g
        lc = den.lead
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, PolyQ):
            return cls(value)
        return cls(PolyQ.const(as_rat(value)))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> PolyQ:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def __add__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return RatFunc(self.den**-e, self.num**-e)
        return RatFunc(self.num**e, self.den**e)

    def __eq__(self, other) -> bool:
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num, self.den))

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / d

    def shift(self, c: Scalar) -> "RatFunc":
        return RatFunc(self.num.shift(c), self.den.shift(c))

    def format(self, var: str = "n") -> str:
        if self.is_polynomial():
            return self.num.format(var)
        num = self.num.format(var)
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        return f"{num}/({self.den.format(var)})"

    def __str__(self) -> str:
        return self.format("n")

    def __repr__(self) -> str:
        return f"RatFunc({self.format('n')!r})"


def decompose_core(P: PolyQ, k: int) -> tuple[list[Fraction], PolyQ, PolyQ]:
    """Partial fractions of ``1/(x^k P(x) P(x+1))``.

    Returns ``(c, U, V)`` with
    ``1/(x^k P(x) P(x+1)) = sum_j c[j-1]/x^j + U(x)/P(x+1) + V(x)/P(x)``
    and ``deg U, deg V <= deg P - 1``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if P.is_zero():
        raise ValueError("P must be nonzero")
    if P(0) == 0 or P(1) == 0:
        raise ZeroAtIntegerPole("P vanishes at 0 or 1")
    P1 = P.shift(1)
    g, s, t = ext_euclid(P, P1)
    if not g.is_constant():
        raise NotCoprime(f"gcd(P(x), P(x+1)) = {g}")
    Q = P * P1
    # power series of 1/Q at 0, truncated below x^k
    q0 = Q.coeff(0)
    series = [1 / q0]
    for i in range(1, k):
        acc = sum((Q.coeff(j) * series[i - j] for j in range(1, i + 1)), Fraction(0))
        series.append(-acc / q0)
    c = [series[k - j] for j in range(1, k + 1)]
    head = PolyQ(series)
    N = (PolyQ.const(1) - Q * head) // PolyQ.monomial(k)
    U0, V0 = s * N, t * N
    quo, U = poly_divrem(U0, P1)
    V = V0 + quo * P
    return c, U, V


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for n in range(1, m + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * table[j]
        table.append(-acc / (n + 1))
    return tuple(table)


def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` with ``B_1 = -1/2``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    size = max(m, 64)
    return _bernoulli_table(size)[m]
