"""Decimal fixed-point numbers backed by Python integers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

GUARD_DIGITS = 10


def _rdiv(a: int, b: int) -> int:
    """Round-half-away division of integers."""
    q, r = divmod(abs(a), abs(b))
    if 2 * r >= abs(b):
        q += 1
    return q if (a >= 0) == (b > 0) else -q


@dataclass(frozen=True)
class FixedFloat:
    """``mantissa * 10**-scale``, nominally accurate to ``prec`` digits.

    ``scale`` normally exceeds ``prec`` by :data:`GUARD_DIGITS`.
    """

    mantissa: int
    scale: int
    prec: int

    @classmethod
    def from_fraction(cls, x, prec: int, guard: int = GUARD_DIGITS) -> "FixedFloat":
        x = Fraction(x)
        scale = prec + guard
        return cls(_rdiv(x.numerator * 10**scale, x.denominator), scale, prec)

    @classmethod
    def from_ratio(cls, p: int, q: int, prec: int, guard: int = GUARD_DIGITS) -> "FixedFloat":
        if q == 0:
            raise ZeroDivisionError("zero denominator")
        scale = prec + guard
        return cls(_rdiv(p * 10**scale, q), scale, prec)

    @classmethod
    def zero(cls, prec: int, guard: int = GUARD_DIGITS) -> "FixedFloat":
        return cls(0, prec + guard, prec)

    def _align(self, other: "FixedFloat") -> tuple[int, int, int, int]:
        scale = max(self.scale, other.scale)
        a = self.mantissa * 10 ** (scale - self.scale)
        b = other.mantissa * 10 ** (scale - other.scale)
        return a, b, scale, min(self.prec, other.prec)

    def _coerce(self, other) -> "FixedFloat":
        if isinstance(other, FixedFloat):
            return other
        if isinstance(other, (int, Fraction)):
            return FixedFloat.from_fraction(other, self.prec, self.scale - self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, scale, prec = self._align(other)
        return FixedFloat(a + b, scale, prec)

    __radd__ = __add__

    def __neg__(self):
        return FixedFloat(-self.mantissa, self.scale, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FixedFloat(_rdiv(self.mantissa * other.numerator, other.denominator), self.scale, self.prec)
        if not isinstance(other, FixedFloat):
            return NotImplemented
        scale = max(self.scale, other.scale)
        m = _rdiv(self.mantissa * other.mantissa * 10**scale, 10 ** (self.scale + other.scale))
        return FixedFloat(m, scale, min(self.prec, other.prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FixedFloat(_rdiv(self.mantissa * other.denominator, other.numerator), self.scale, self.prec)
        if not isinstance(other, FixedFloat):
            return NotImplemented
        scale = max(self.scale, other.scale)
        m = _rdiv(self.mantissa * 10 ** (scale + other.scale), other.mantissa * 10**self.scale)
        return FixedFloat(m, scale, min(self.prec, other.prec))

    def __abs__(self):
        return FixedFloat(abs(self.mantissa), self.scale, self.prec)

    def _cmp_key(self, other):
        other = self._coerce(other)
        a, b, _, _ = self._align(other)
        return a, b

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def tolerance(self) -> Fraction:
        """Comparison tolerance ``10**-(prec-5)``."""
        return Fraction(1, 10 ** max(self.prec - 5, 0))

    def close_to(self, other, tol=None) -> bool:
        other = self._coerce(other)
        tol = Fraction(tol) if tol is not None else max(self.tolerance(), other.tolerance())
        return abs((self - other).to_fraction()) <= tol

    def decimal_str(self, digits: int | None = None) -> str:
        """Decimal expansion rounded to ``digits`` places (default ``prec``)."""
        digits = self.prec if digits is None else digits
        m = _rdiv(self.mantissa * 10**digits, 10**self.scale) if digits <= self.scale else self.mantissa * 10 ** (digits - self.scale)
        sign = "-" if m < 0 else ""
        s = str(abs(m)).rjust(digits + 1, "0")
        if digits == 0:
            return sign + s
        return f"{sign}{s[:-digits]}.{s[-digits:]}"

    def __str__(self) -> str:
        return self.decimal_str()

    def sci_str(self, sig: int = 6) -> str:
        """Short scientific notation, meant for error estimates."""
        f = self.to_fraction()
        if f == 0:
            return "0"
        return f"{float(f):.{sig - 1}e}" if abs(f) > Fraction(1, 10**300) else f"~1e-{self.scale}"
