"""Generalized continued fractions with eventually polynomial terms.

A :class:`GCF` stands for ``a(0) + b(0)/(a(1) + b(1)/(a(2) + ...))`` where the
first ``m`` pairs ``(a(n), b(n))`` are explicit rationals and ``a(n) = A(n)``,
``b(n) = B(n)`` for ``n >= m``.  Tails are evaluated at the absolute index.
The bracket notation ``[[a0,A(n)],[b0,B(n)]]`` is the case ``m = 1``.
"""
from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exact_arith import PolyQ, RatFunc, as_rat, format_rat, integer_roots_in, poly_lcm
from .fixed import GUARD_DIGITS, FixedFloat
from .parsing import ExprSyntaxError, parse_ratfunc

DEFAULT_HORIZON = 10_000
EXACT_BUDGET = 500


class CFSyntaxError(ExprSyntaxError):
    pass


class ZeroValue(ValueError):
    pass


class ZeroDenominator(ArithmeticError):
    pass


class InsufficientData(ValueError):
    pass


def _bad_integer_points(f: RatFunc, lo: int, hi: int) -> list[int]:
    bad = integer_roots_in(f.num, lo, hi) if not f.is_zero() else [lo]
    if not f.den.is_constant():
        bad += integer_roots_in(f.den, lo, hi)
    return sorted(set(bad))


@dataclass(frozen=True)
class GCF:
    """Continued fraction with explicit prefix and rational-function tail."""

    prefix: tuple[tuple[Fraction, Fraction], ...]
    tail_a: RatFunc
    tail_b: RatFunc
    horizon: int = field(default=DEFAULT_HORIZON, compare=False, repr=False)

    def __post_init__(self):
        prefix = tuple((as_rat(a), as_rat(b)) for a, b in self.prefix)
        ta, tb = RatFunc.coerce(self.tail_a), RatFunc.coerce(self.tail_b)
        if not prefix:
            raise ValueError("a continued fraction needs at least a(0), b(0)")
        if tb.is_zero():
            raise ValueError("tail B(n) is identically zero")
        if ta.is_zero():
            raise ValueError("tail A(n) is identically zero")
        # drop prefix entries the tail already reproduces
        while len(prefix) > 1:
            n = len(prefix) - 1
            a, b = prefix[-1]
            try:
                same = ta(n) == a and tb(n) == b
            except ZeroDivisionError:
                same = False
            if not same:
                break
            prefix = prefix[:-1]
        for i, (_, b) in enumerate(prefix):
            if b == 0:
                raise ValueError(f"b({i}) is zero")
        m = len(prefix)
        for name, f in (("A", ta), ("B", tb)):
            bad = _bad_integer_points(f, m, self.horizon)
            if bad:
                raise ValueError(f"tail {name}(n) = {f} vanishes or is undefined at n = {bad[0]}")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail_a", ta)
        object.__setattr__(self, "tail_b", tb)

    @classmethod
    def simple(cls, a0, A, b0, B) -> "GCF":
        """The one-constant form ``[[a0, A(n)], [b0, B(n)]]``."""
        return cls(((a0, b0),), _coerce_tail(A), _coerce_tail(B))

    @property
    def start(self) -> int:
        return len(self.prefix)

    @property
    def a0(self) -> Fraction:
        return self.prefix[0][0]

    @property
    def b0(self) -> Fraction:
        return self.prefix[0][1]

    def is_polynomial(self) -> bool:
        return self.tail_a.is_polynomial() and self.tail_b.is_polynomial()

    @property
    def A(self) -> PolyQ:
        return self.tail_a.as_poly()

    @property
    def B(self) -> PolyQ:
        return self.tail_b.as_poly()

    def a(self, n: int) -> Fraction:
        return self.prefix[n][0] if n < self.start else self.tail_a(n)

    def b(self, n: int) -> Fraction:
        return self.prefix[n][1] if n < self.start else self.tail_b(n)

    def bidegree(self) -> tuple[int, int]:
        return self.A.degree, self.B.degree

    def with_head(self, a0, b0) -> "GCF":
        """Same continued fraction with ``a(0), b(0)`` replaced."""
        return GCF(((as_rat(a0), as_rat(b0)),) + self.prefix[1:], self.tail_a, self.tail_b)

    def affine(self, scale, shift=0) -> "GCF":
        """CF for ``scale * value + shift``."""
        scale, shift = as_rat(scale), as_rat(shift)
        if scale == 0:
            raise ValueError("scale must be nonzero")
        return self.with_head(scale * self.a0 + shift, scale * self.b0)

    def __str__(self) -> str:
        return print_cf(self)


def _coerce_tail(x) -> RatFunc:
    if isinstance(x, str):
        return parse_ratfunc(x)
    return RatFunc.coerce(x)


@dataclass(frozen=True)
class ConvergentPair:
    p: Fraction
    q: Fraction
    index: int

    @property
    def zero_q(self) -> bool:
        return self.q == 0

    @property
    def value(self) -> Fraction:
        if self.q == 0:
            raise ZeroDenominator(f"q({self.index}) = 0")
        return self.p / self.q


@dataclass(frozen=True)
class RateEstimate:
    exponent: float
    samples: tuple[tuple[int, float], ...]


# text format

def _split_top(text: str, start: int, end: int) -> list[tuple[int, int]]:
    """Split ``text[start:end]`` on commas outside parentheses."""
    parts, depth, s = [], 0, start
    for i in range(start, end):
        ch = text[i]
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((s, i))
            s = i + 1
    parts.append((s, end))
    return parts


def _find_bracket(text: str, pos: int) -> tuple[int, int]:
    """Position of the first non-blank ``[`` at or after ``pos`` and its match."""
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text) or text[pos] != "[":
        raise CFSyntaxError("expected '['", pos, text)
    depth = 0
    for i in range(pos, len(text)):
        if text[i] == "[":
            depth += 1
        elif text[i] == "]":
            depth -= 1
            if depth == 0:
                return pos, i
    raise CFSyntaxError("unbalanced '['", pos, text)


def _skip(text: str, pos: int, ch: str) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text) or text[pos] != ch:
        raise CFSyntaxError(f"expected {ch!r}", pos, text)
    return pos + 1


def _entry(text: str, s: int, e: int) -> RatFunc:
    try:
        return parse_ratfunc(text[s:e], s)
    except CFSyntaxError:
        raise
    except ExprSyntaxError as exc:
        raise CFSyntaxError(exc.msg, exc.pos, text) from exc


def _parse_bracket(text: str, lo: int, hi: int, which: str):
    items = _split_top(text, lo + 1, hi)
    if len(items) < 2:
        raise CFSyntaxError(f"{which}-bracket needs leading constants and a tail polynomial", hi, text)
    consts = []
    for s, e in items[:-1]:
        if text[s:e].strip() == "":
            raise CFSyntaxError("empty entry", s, text)
        v = _entry(text, s, e)
        if not v.is_constant():
            raise CFSyntaxError("leading entries must be constants", s, text)
        consts.append(v.num.coeff(0))
    s, e = items[-1]
    if text[s:e].strip() == "":
        raise CFSyntaxError("missing tail polynomial", s, text)
    return consts, _entry(text, s, e)


def parse_cf(text: str) -> GCF:
    """Parse ``[[a0,...,A(n)],[b0,...,B(n)]]``.

    The b-bracket may list fewer constants than the a-bracket; missing
    ``b(i)`` are taken from ``B(i)``.
    """
    o_lo, o_hi = _find_bracket(text, 0)
    if text[o_hi + 1 :].strip():
        raise CFSyntaxError("trailing characters", o_hi + 1, text)
    a_lo, a_hi = _find_bracket(text, o_lo + 1)
    pos = _skip(text, a_hi + 1, ",")
    b_lo, b_hi = _find_bracket(text, pos)
    _skip(text, b_hi + 1, "]")
    a_consts, A = _parse_bracket(text, a_lo, a_hi, "a")
    b_consts, B = _parse_bracket(text, b_lo, b_hi, "b")
    if len(b_consts) > len(a_consts):
        raise CFSyntaxError(
            f"arity mismatch: {len(a_consts)} a-constants but {len(b_consts)} b-constants", b_lo, text
        )
    try:
        bs = b_consts + [B(i) for i in range(len(b_consts), len(a_consts))]
        return GCF(tuple(zip(a_consts, bs)), A, B)
    except (ValueError, ZeroDivisionError) as exc:
        raise CFSyntaxError(f"invalid continued fraction: {exc}", 0, text) from exc


def print_cf(cf: GCF) -> str:
    a_items = [format_rat(a) for a, _ in cf.prefix]
    bs = [b for _, b in cf.prefix]
    # trailing b-prefix entries equal to B(i) are implied
    while len(bs) > 1:
        try:
            if cf.tail_b(len(bs) - 1) != bs[-1]:
                break
        except ZeroDivisionError:
            break
        bs.pop()
    b_items = [format_rat(b) for b in bs]
    return (
        f"[[{','.join(a_items + [cf.tail_a.format('n')])}],"
        f"[{','.join(b_items + [cf.tail_b.format('n')])}]]"
    )


def cf_to_json(cf: GCF) -> dict:
    return {
        "prefix": [[format_rat(a), format_rat(b)] for a, b in cf.prefix],
        "tail_a": cf.tail_a.format("n"),
        "tail_b": cf.tail_b.format("n"),
        "start": cf.start,
    }


def cf_from_json(obj) -> GCF:
    if isinstance(obj, str):
        obj = json.loads(obj)
    prefix = tuple((Fraction(a), Fraction(b)) for a, b in obj["prefix"])
    if obj.get("start", len(prefix)) != len(prefix):
        raise ValueError("start does not match prefix length")
    return GCF(prefix, parse_ratfunc(obj["tail_a"]), parse_ratfunc(obj["tail_b"]))


# exact convergents

def _convergent_stream(a, b, N: int) -> Iterator[tuple[Fraction, Fraction]]:
    p2, q2 = Fraction(1), Fraction(0)
    p1, q1 = a(0), Fraction(1)
    yield p1, q1
    for n in range(1, N + 1):
        an, bn = a(n), b(n - 1)
        p1, p2 = an * p1 + bn * p2, p1
        q1, q2 = an * q1 + bn * q2, q1
        yield p1, q1


def convergents(cf: GCF, N: int, budget: int = EXACT_BUDGET) -> list[ConvergentPair]:
    """Exact ``p(n), q(n)`` for ``0 <= n <= N``.

    Seeds are ``p(-1) = 1, q(-1) = 0, p(0) = a(0), q(0) = 1``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > budget:
        raise ValueError(f"N = {N} exceeds the exact budget {budget}; use eval_cf_numeric")
    return [ConvergentPair(p, q, i) for i, (p, q) in enumerate(_convergent_stream(cf.a, cf.b, N))]


def convergents_of(a, b, N: int) -> list[ConvergentPair]:
    """Exact convergents for arbitrary term callables ``a(n)``, ``b(n)``."""
    return [ConvergentPair(p, q, i) for i, (p, q) in enumerate(_convergent_stream(a, b, N))]


# transforms

def equivalence_transform(cf: GCF, r, r_prefix: Sequence | None = None) -> GCF:
    """Rescale by ``r``: ``a'(n) = r(n) a(n)``, ``b'(n) = r(n) r(n+1) b(n)``.

    ``r`` (a rational function or constant) gives ``r(n)`` for ``n >= m``;
    ``r_prefix`` gives ``r(0), ..., r(m-1)`` and defaults to ``1`` followed by
    values of ``r``.  ``r(0)`` must be 1.
    """
    r = RatFunc.coerce(r)
    m = cf.start
    if r_prefix is None:
        r_prefix = [Fraction(1)] + [r(n) for n in range(1, m)]
    r_prefix = [as_rat(v) for v in r_prefix]
    if len(r_prefix) != m:
        raise ValueError(f"r_prefix needs {m} values")
    if r_prefix[0] != 1:
        raise ValueError("r(0) must be 1")
    if r.is_zero() or any(v == 0 for v in r_prefix):
        raise ZeroValue("zero multiplier")
    bad = _bad_integer_points(r, m, cf.horizon)
    if bad:
        raise ZeroValue(f"multiplier vanishes or is undefined at n = {bad[0]}")

    def rv(n):
        return r_prefix[n] if n < m else r(n)

    prefix = tuple((rv(n) * cf.a(n), rv(n) * rv(n + 1) * cf.b(n)) for n in range(m))
    return GCF(prefix, r * cf.tail_a, r * r.shift(1) * cf.tail_b)


def euler_transform(f, z, clear: bool = True) -> GCF:
    """CF whose N-th convergent is the N-th partial sum of ``sum z^n / f(n)``.

    Raw form is ``[[0, f(n) + z f(n-1)], [z, -z f(n)^2]]`` with ``f(0) = 0``.
    With ``clear`` the rational entries are made polynomial by the
    equivalence ``r(n) = lcm(den f(n), den f(n-1))``.
    """
    f = _coerce_tail(f) if not isinstance(f, RatFunc) else f
    z = as_rat(z)
    if z == 0:
        raise ZeroValue("z must be nonzero")
    if f.is_zero():
        raise ZeroValue("f is identically zero")
    bad = _bad_integer_points(f, 1, DEFAULT_HORIZON)
    if bad:
        raise ZeroValue(f"f vanishes or is undefined at n = {bad[0]}")
    fm1 = f.shift(-1)
    tail_a = f + z * fm1
    tail_b = -z * f * f
    # the polynomial formula for a(1) needs f(0) = 0
    try:
        f0_zero = f(0) == 0
    except ZeroDivisionError:
        f0_zero = False
    if f0_zero:
        prefix = ((Fraction(0), z),)
    else:
        prefix = ((Fraction(0), z), (f(1), tail_b(1)))
    raw = GCF(prefix, tail_a, tail_b)
    if not clear or (tail_a.is_polynomial() and tail_b.is_polynomial()):
        return raw
    r = RatFunc(poly_lcm(f.den, fm1.den))
    r_prefix = [1] + [f.den(n) for n in range(1, raw.start)]
    return equivalence_transform(raw, r, r_prefix)


def clear_denominators(cf: GCF) -> GCF:
    """Equivalent CF with polynomial tails (not necessarily minimal)."""
    if cf.is_polynomial():
        return cf
    r = RatFunc(poly_lcm(cf.tail_a.den, cf.tail_b.den))
    return equivalence_transform(cf, r)


# numerical evaluation

def _int_poly(P: PolyQ, scale: int) -> tuple[int, ...]:
    cs = tuple(c * scale for c in P.coeffs)
    assert all(c.denominator == 1 for c in cs)
    return tuple(int(c) for c in cs)


def _horner(cs: tuple[int, ...], n: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * n + c
    return acc


def forward_values(cf: GCF, depths: Iterable[int], prec: int) -> dict[int, tuple[int, int]]:
    """Approximate ``(p(N), q(N))`` (common scaling) for each requested depth.

    Also records depth ``N - 1`` for every requested ``N``.  Magnitudes are
    rescaled by a power of two once the older pair exceeds twice the working
    size of ``10**(prec + guard)``.
    """
    want = sorted(set(depths))
    if not want:
        return {}
    need = set(want) | {d - 1 for d in want if d >= 1}
    top = want[-1]
    cf = clear_denominators(cf)
    m = cf.start
    out: dict[int, tuple[int, int]] = {}
    # exact part through index m
    exact = convergents_of(cf.a, cf.b, min(m, top))
    for cp in exact:
        if cp.index in need:
            out[cp.index] = (cp.p, cp.q)
    if top <= m:
        return {k: _frac_pair(*v) for k, v in out.items()}
    p1, q1 = exact[m].p, exact[m].q
    p2, q2 = exact[m - 1].p, exact[m - 1].q
    L = math.lcm(p1.denominator, q1.denominator, p2.denominator, q2.denominator)
    p1, q1, p2, q2 = (int(v * L) for v in (p1, q1, p2, q2))
    for k in list(out):
        out[k] = _frac_pair(*out[k])
    # integer tails: a' = D A, b'(m) = D b(m), b'(n>m) = D^2 B(n)
    D = math.lcm(cf.A.int_coeffs()[0], cf.B.int_coeffs()[0])
    ia = _int_poly(cf.A, D)
    ib = _int_poly(cf.B, D * D)
    bm = int(D * cf.b(m))
    limit_bits = int((prec + GUARD_DIGITS) * 3.33) + 8
    for n in range(m + 1, top + 1):
        an = _horner(ia, n)
        bn = bm if n - 1 == m else _horner(ib, n - 1)
        p1, p2 = an * p1 + bn * p2, p1
        q1, q2 = an * q1 + bn * q2, q1
        # rescale on the older pair: one step can add hundreds of bits, and
        # p(n-1), q(n-1) must keep full relative precision too
        bits = max(abs(p2).bit_length(), abs(q2).bit_length())
        if bits > 2 * limit_bits:
            s = bits - limit_bits
            p1 >>= s
            p2 >>= s
            q1 >>= s
            q2 >>= s
        if n in need:
            out[n] = (p1, q1)
        if n - 1 in need and n - 1 not in out:
            out[n - 1] = (p2, q2)
    return out


def _frac_pair(p: Fraction, q: Fraction) -> tuple[int, int]:
    L = math.lcm(p.denominator, q.denominator)
    return int(p * L), int(q * L)


def eval_cf_numeric(cf: GCF, depth: int, prec: int = 30) -> tuple[FixedFloat, FixedFloat]:
    """Value of the depth-``depth`` convergent and ``|x(depth) - x(depth-1)|``."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    vals = forward_values(cf, [depth], prec)
    p, q = vals[depth]
    pp, qp = vals[depth - 1]
    if q == 0:
        raise ZeroDenominator(f"q({depth}) = 0")
    x = FixedFloat.from_ratio(p, q, prec)
    if qp == 0:
        return x, FixedFloat.from_fraction(10**prec, prec)
    err = FixedFloat.from_ratio(abs(p * qp - pp * q), abs(q * qp), prec)
    return x, err


def convergence_rate(cf: GCF, depths: Sequence[int], prec: int = 50) -> RateEstimate:
    """Fit ``|x(2N) - x(N)| ~ C / N^k`` over the given ``N`` and return ``k``.

    Use depths of a single parity for alternating CFs.
    """
    depths = list(depths)
    if len(depths) < 3 or any(b <= a for a, b in zip(depths, depths[1:])):
        raise InsufficientData("need at least 3 strictly increasing depths")
    vals = forward_values(cf, depths + [2 * d for d in depths], prec)
    samples = []
    for N in depths:
        p, q = vals[N]
        P, Q = vals[2 * N]
        if q == 0 or Q == 0:
            raise ZeroDenominator(f"zero denominator near depth {N}")
        diff = abs(Fraction(P, Q) - Fraction(p, q))
        if diff > 0 and diff > Fraction(1, 10 ** (prec - 2)):
            samples.append((N, float(diff)))
    if len(samples) < 3:
        raise InsufficientData("differences vanish at this precision; raise prec")
    xs = [math.log(n) for n, _ in samples]
    ys = [math.log(d) for _, d in samples]
    slope, _ = statistics.linear_regression(xs, ys)
    return RateEstimate(-slope, tuple(samples))
