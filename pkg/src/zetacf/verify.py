"""Verification suites: every identity the package knows about, checked exactly or numerically."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import hp_numeric
from .bauer_muir import FAMILY_NAMES, accelerated_family, bm_check_relation, bm_iterate, bm_solve_r
from .cf_engine import GCF, convergence_rate, convergents, equivalence_transform, euler_transform, parse_cf, print_cf
from .exact_arith import PolyQ, RatFunc, decompose_core
from .period_algebra import (
    FAMILIES,
    KNOWN_IDENTITIES,
    build_identity,
    catalog,
    decompose_period,
    divisibility_check,
    family,
    multiplier_cf,
    multiplier_cf_via_euler,
)
from .periods import ONE, RationalPeriod, Zeta

SUITES = ("lemmas", "multiplier", "families", "psi", "bm")


@dataclass(frozen=True)
class Entry:
    id: str
    kind: str  # "exact" or "numeric"
    status: str  # "pass", "fail" or "skip"
    detail: str = ""
    error: str | None = None


@dataclass
class VerifyReport:
    entries: list[Entry] = field(default_factory=list)

    def __post_init__(self):
        ids = [e.id for e in self.entries]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate entry ids")
        self.entries = sorted(self.entries, key=lambda e: e.id)

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def to_json(self) -> dict:
        return {"ok": self.ok, "counts": self.counts(), "entries": [asdict(e) for e in self.entries]}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _guard(id: str, kind: str, fn: Callable[[], Entry]) -> Entry:
    try:
        return fn()
    except Exception as exc:  # a crash is a failed check, not a crashed report
        return Entry(id, kind, "fail", f"{type(exc).__name__}: {exc}")


# series and equivalence transforms

def euler_matches_partial_sums(f, z, N: int = 100) -> bool:
    f = RatFunc.coerce(f)
    cf = euler_transform(f, z)
    total = Fraction(0)
    for cp in convergents(cf, N):
        if cp.index >= 1:
            total += Fraction(z) ** cp.index / f(cp.index)
        if cp.q == 0 or cp.value != total:
            return False
    return True


def equivalent_convergents(cf: GCF, cf2: GCF, N: int = 50) -> bool:
    for c1, c2 in zip(convergents(cf, N), convergents(cf2, N)):
        if (c1.q == 0) != (c2.q == 0) or c1.p * c2.q != c2.p * c1.q:
            return False
    return True


def random_equivalence_pairs(count: int = 10, seed: int = 20240501) -> list[tuple[GCF, PolyQ]]:
    """Random polynomial CFs with random multipliers free of positive integer roots."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        A = PolyQ([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [rng.randint(1, 4)])
        B = PolyQ([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [rng.choice([-3, -1, 1, 2])])
        r = PolyQ([rng.randint(1, 6) for _ in range(rng.randint(1, 3))])  # positive coefficients
        try:
            cf = GCF.simple(rng.randint(-3, 3), A, rng.choice([-2, -1, 1, 3]), B)
        except ValueError:
            continue
        out.append((cf, r))
    return out


def _transform_entries() -> list[Entry]:
    out = []
    n = PolyQ.x()
    cases = [("n^3/(n+1)", RatFunc(n**3, n + 1), 1)]
    for k in range(2, 7):
        for z in (1, -1):
            cases.append((f"n^{k}", RatFunc(n**k), z))
    for label, f, z in cases:
        id = f"lemmas/euler/{label}/z={z}"
        out.append(_guard(id, "exact", lambda f=f, z=z, id=id: Entry(
            id, "exact", _status(euler_matches_partial_sums(f, z, 100)), "N-th convergent equals N-th partial sum, N <= 100")))

    def cubic_over_linear():
        raw = euler_transform(RatFunc(n**3, n + 1), 1, clear=False)
        cleared = equivalence_transform(raw, n * n + n)
        ok = equivalent_convergents(raw, cleared) and print_cf(cleared) == "[[0,2*n^4-2*n^3+2*n-1],[2,-n^8-2*n^7]]"
        return Entry("lemmas/equivalence/cubic-over-linear", "exact", _status(ok), print_cf(cleared))

    out.append(_guard("lemmas/equivalence/cubic-over-linear", "exact", cubic_over_linear))
    for i, (cf, r) in enumerate(random_equivalence_pairs()):
        id = f"lemmas/equivalence/random-{i:02d}"
        out.append(_guard(id, "exact", lambda cf=cf, r=r, id=id: Entry(
            id, "exact", _status(equivalent_convergents(cf, equivalence_transform(cf, r))), f"{cf} with r={r}")))
    return out


# multipliers

def _multiplier_entries() -> list[Entry]:
    out = []
    for sign in ("plus", "minus"):
        for entry in catalog(sign):
            P = entry.P
            id = f"multiplier/symmetry/{sign}/{P}"
            sym = P.compose(1 - PolyQ.x()) == (-1) ** int(P.degree) * P
            out.append(Entry(id, "exact", _status(sym), "P(1-x) = (-1)^deg P(x)"))
            for k in entry.smallest(3):
                id = f"multiplier/divisibility/{sign}/{P}/k={k}"

                def check(P=P, k=k, sign=sign, id=id):
                    R = divisibility_check(P, k, sign)
                    ok = R is not None and multiplier_cf(P, k, sign) == multiplier_cf_via_euler(P, k, sign)
                    if ok and sign == "plus":
                        ok = decompose_core(P, k)[0][0] == 0
                    return Entry(id, "exact", _status(ok), f"R = {R}")

                out.append(_guard(id, "exact", check))

    def telescoping():
        per, tele, _ = decompose_period(PolyQ([-1, 2]), 2, "plus")
        ok = tele and per == RationalPeriod({ONE: 2, Zeta(2): -1})
        return Entry("multiplier/telescoping/2x-1", "exact", _status(ok), per.format())

    out.append(_guard("multiplier/telescoping/2x-1", "exact", telescoping))
    return out


# families

def check_family_numeric(id: int, k: int, prec: int, depth: int) -> dict:
    lhs, cf = family(id, k)
    return hp_numeric.check_identity(f"family {id} k={k}", lhs, cf, prec, depth)


def _numeric_entry(id: str, row: dict, expect_pass: bool = True) -> Entry:
    detail = f"{row['cf']} = {row['value']} (tol {row['tolerance']})"
    return Entry(id, "numeric", _status(row["pass"] == expect_pass), detail, row["error"])


def _family_entries(prec: int, depth: int) -> list[Entry]:
    out = []
    for i, ex in enumerate(KNOWN_IDENTITIES):
        id = f"families/known/{i + 1:02d}"

        def exact(ex=ex, id=id):
            lhs, cf = build_identity(ex)
            ok = lhs == ex.lhs and cf == parse_cf(ex.cf)
            return Entry(id, "exact", _status(ok), f"{lhs.format()} = {print_cf(cf)}")

        out.append(_guard(id, "exact", exact))
        id = f"families/known-numeric/{i + 1:02d}"
        out.append(_guard(id, "numeric", lambda ex=ex, id=id: _numeric_entry(
            id, hp_numeric.check_identity(ex.lhs.format(), ex.lhs, parse_cf(ex.cf), prec, depth))))
    for fid, spec in FAMILIES.items():
        for k in range(spec.kmin, 4):
            id = f"families/family-{fid}/k={k}"
            out.append(_guard(id, "numeric", lambda fid=fid, k=k, id=id: _numeric_entry(
                id, check_family_numeric(fid, k, prec, depth))))
    return out


# polygamma

def _psi_entries(prec: int, depth: int) -> list[Entry]:
    out = []
    tol = Fraction(1, 10 ** max(prec - 5, 1))
    for r, m in hp_numeric.TABLE_ROWS:
        for order in (1, 2):
            id = f"psi/table/order{order}/{r}_{m}"

            def row(r=r, m=m, order=order, id=id):
                direct = hp_numeric.psi_value(r, m, order, prec)
                table = hp_numeric.period_value(hp_numeric.psi_table(r, m, order), prec)
                err = abs(direct - table)
                return Entry(id, "numeric", _status(err.to_fraction() <= tol),
                             hp_numeric.psi_table(r, m, order).format(), err.sci_str())

            out.append(_guard(id, "numeric", row))
    for i, row in enumerate(hp_numeric.psi_identity_suite(prec, depth)):
        id = f"psi/identity/{i + 1:02d}"
        e = _numeric_entry(id, row)
        detail = f"{row['identity']} = {e.detail}; rate N^-{row['rate']}, extrapolated error {row['extrapolated_error']}"
        if not row["derived_matches_target"]:
            e = Entry(e.id, e.kind, "fail", detail + " (derived CF differs from the reference form)", e.error)
        else:
            e = Entry(e.id, e.kind, e.status, detail, e.error)
        out.append(e)
    id = "psi/negative-control"
    out.append(_guard(id, "numeric", lambda: _numeric_entry(id, hp_numeric.psi_negative_control(prec, depth), False)))
    return out


# Bauer-Muir

BM_KNOWN_CONSTANTS = {
    "Log2": ["1", "1/2", "5/6"],
    "Zeta2": ["2", "3/2", "31/18", "115/72", "3019/1800", "973/600"],
    "Catalan": ["1", "8/9", "209/225", "10016/11025"],
    "Zeta3": ["1", "9/8", "251/216"],
}
ZETA4_TRIVIAL = "[[0,n^4+(n-1)^4],[1,-n^8]]"


def log2_rates(ks: Iterable[int] = (0, 1, 2), depths=(250, 500, 1000, 2000)) -> list[float]:
    return [convergence_rate(accelerated_family("Log2", k), list(depths), 60).exponent for k in ks]


def _bm_entries() -> list[Entry]:
    out = []
    fixed = [("log2", "[[0,1],[1,n^2]]", "n-1"), ("zeta2", "[[0,2n^2-2n+1],[1,-n^4]]", "-n^2+n-1/2")]
    for label, cf, r in fixed:
        id = f"bm/relation/{label}/{r}"
        out.append(_guard(id, "exact", lambda cf=cf, r=r, id=id: Entry(
            id, "exact", _status(bm_check_relation(parse_cf(cf), r, 50)), "N <= 50")))
    for name in FAMILY_NAMES:
        for k in range(3):
            cf = accelerated_family(name, k)
            for r in bm_solve_r(cf):
                id = f"bm/relation/{name}/k={k}/{r}"
                out.append(_guard(id, "exact", lambda cf=cf, r=r, id=id: Entry(
                    id, "exact", _status(bm_check_relation(cf, r, 50)), "solver accelerator, N <= 50")))
        id = f"bm/iterate/{name}"

        def closed(name=name, id=id):
            start = accelerated_family(name, 0)
            seq = bm_iterate(start, 6)
            ok = all(seq[k] == accelerated_family(name, k) for k in range(7))
            known = BM_KNOWN_CONSTANTS.get(name)
            if known is not None:
                got = [str(c.a0) for c in seq[1 : len(known) + 1]]
                ok = ok and got == known
            return Entry(id, "exact", _status(ok), ", ".join(str(c.a0) for c in seq))

        out.append(_guard(id, "exact", closed))

    def rates():
        xs = log2_rates()
        ok = all(abs(x - (2 * k + 1)) <= 0.5 for k, x in enumerate(xs)) and xs[0] < xs[1] < xs[2]
        return Entry("bm/rates/log2", "numeric", _status(ok), ", ".join(f"{x:.3f}" for x in xs))

    out.append(_guard("bm/rates/log2", "numeric", rates))

    def zeta4():
        sols = bm_solve_r(parse_cf(ZETA4_TRIVIAL), 4)
        return Entry("bm/zeta4-empty", "exact", _status(sols == []), f"{len(sols)} accelerators with deg <= 4")

    out.append(_guard("bm/zeta4-empty", "exact", zeta4))
    return out


def run_suite(suite: str = "all", prec: int = 30, depth: int = 2000) -> VerifyReport:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    wanted = SUITES if suite == "all" else (suite,)
    entries: list[Entry] = []
    for s in wanted:
        if s == "lemmas":
            entries += _transform_entries()
        elif s == "multiplier":
            entries += _multiplier_entries()
        elif s == "families":
            entries += _family_entries(prec, depth)
        elif s == "psi":
            entries += _psi_entries(prec, depth)
        else:
            entries += _bm_entries()
    return VerifyReport(entries)
