"""Rational linear combinations over a fixed basis of constants."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exact_arith import as_rat, format_rat

_KINDS = ("One", "Zeta", "Log2", "Catalan", "G3", "Pi3", "Pi3OverSqrt3")
_DEGREE = {"One": 0, "Log2": 1, "Catalan": 2, "G3": 2, "Pi3": 3, "Pi3OverSqrt3": 3}
_PRETTY = {
    "One": "1",
    "Log2": "log(2)",
    "Catalan": "G",
    "G3": "G3",
    "Pi3": "pi^3",
    "Pi3OverSqrt3": "pi^3/sqrt(3)",
}


@dataclass(frozen=True, order=True)
class Basis:
    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown basis constant {self.kind!r}")
        if self.kind == "Zeta" and self.k < 2:
            raise ValueError("Zeta(k) needs k >= 2")
        if self.kind != "Zeta" and self.k != 0:
            raise ValueError(f"{self.kind} takes no index")

    @property
    def degree(self) -> int:
        return self.k if self.kind == "Zeta" else _DEGREE[self.kind]

    @property
    def tag(self) -> str:
        return f"Zeta({self.k})" if self.kind == "Zeta" else self.kind

    @classmethod
    def from_tag(cls, tag: str) -> "Basis":
        m = re.fullmatch(r"\s*Zeta\((\d+)\)\s*", tag)
        if m:
            return cls("Zeta", int(m.group(1)))
        return cls(tag.strip())

    def pretty(self) -> str:
        return f"zeta({self.k})" if self.kind == "Zeta" else _PRETTY[self.kind]

    def sort_key(self):
        # One first, then zeta values by decreasing weight, then the rest
        return (_KINDS.index(self.kind), -self.k)

    def __str__(self) -> str:
        return self.tag


ONE = Basis("One")
LOG2 = Basis("Log2")
CATALAN = Basis("Catalan")
G3 = Basis("G3")
PI3 = Basis("Pi3")
PI3_OVER_SQRT3 = Basis("Pi3OverSqrt3")


def Zeta(k: int) -> Basis:
    return Basis("Zeta", k)


class RationalPeriod:
    """Immutable map ``Basis -> Fraction`` with zero coefficients dropped."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Basis, object] | Iterable[tuple[Basis, object]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Basis, Fraction] = {}
        for b, c in items:
            if not isinstance(b, Basis):
                b = Basis.from_tag(b)
            acc[b] = acc.get(b, Fraction(0)) + as_rat(c)
        self._coeffs = {b: c for b, c in sorted(acc.items(), key=lambda t: t[0].sort_key()) if c != 0}

    @property
    def coeffs(self) -> dict[Basis, Fraction]:
        return dict(self._coeffs)

    def __getitem__(self, b: Basis) -> Fraction:
        return self._coeffs.get(b, Fraction(0))

    def __iter__(self):
        return iter(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __add__(self, other: "RationalPeriod") -> "RationalPeriod":
        return RationalPeriod(list(self._coeffs.items()) + list(other._coeffs.items()))

    def __neg__(self) -> "RationalPeriod":
        return RationalPeriod({b: -c for b, c in self._coeffs.items()})

    def __sub__(self, other: "RationalPeriod") -> "RationalPeriod":
        return self + (-other)

    def __mul__(self, scalar) -> "RationalPeriod":
        s = as_rat(scalar)
        return RationalPeriod({b: s * c for b, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPeriod):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    @property
    def degree(self) -> int:
        return max((b.degree for b in self._coeffs), default=0)

    def constant_part(self) -> Fraction:
        return self[ONE]

    def without_constant(self) -> "RationalPeriod":
        return RationalPeriod({b: c for b, c in self._coeffs.items() if b != ONE})

    def to_json(self) -> dict[str, str]:
        return {b.tag: format_rat(c) for b, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "RationalPeriod":
        return cls({Basis.from_tag(t): Fraction(v) for t, v in obj.items()})

    def format(self) -> str:
        if not self._coeffs:
            return "0"
        out = ""
        for b, c in self._coeffs.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if b == ONE:
                body = format_rat(a)
            elif a == 1:
                body = b.pretty()
            else:
                body = f"{format_rat(a)}*{b.pretty()}"
            out += (sign if out or sign == "-" else "") + body
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalPeriod({self.to_json()!r})"


def period(**kwargs) -> RationalPeriod:
    """Shorthand: ``period(One=2, Zeta2=-1, Log2=16)``."""
    items = []
    for key, val in kwargs.items():
        m = re.fullmatch(r"Zeta(\d+)", key)
        items.append((Zeta(int(m.group(1))) if m else Basis(key), val))
    return RationalPeriod(items)


def zeta_star(k: int) -> RationalPeriod:
    """``(2^(k-1) - 1) zeta(k)`` for ``k >= 2``, ``log 2`` for ``k = 1``, ``0`` for ``k = 0``."""
    if k == 0:
        return RationalPeriod()
    if k == 1:
        return RationalPeriod({LOG2: 1})
    return RationalPeriod({Zeta(k): 2 ** (k - 1) - 1})


def zeta_p(k: int) -> RationalPeriod:
    """``zeta(k)`` with ``zeta(0) = 0``."""
    if k == 0:
        return RationalPeriod()
    return RationalPeriod({Zeta(k): 1})
