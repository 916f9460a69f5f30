"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 computation error.  ``ZETACF_PREC`` sets the default working precision.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import hp_numeric, period_algebra
from .bauer_muir import (
    EssentialAssumptionViolated,
    NoAccelerator,
    bm_check_relation,
    bm_iterate_steps,
    bm_solve_r,
    bm_step,
    _tail_d,
)
from .cf_engine import (
    EXACT_BUDGET,
    GCF,
    InsufficientData,
    ZeroDenominator,
    ZeroValue,
    cf_to_json,
    convergents,
    euler_transform,
    eval_cf_numeric,
    parse_cf,
    print_cf,
)
from .exact_arith import NotCoprime, ZeroAtIntegerPole, format_rat
from .parsing import ExprSyntaxError, parse_poly, parse_ratfunc
from .period_algebra import ConvergenceViolation
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

_COMPUTE_ERRORS = (
    ZeroDenominator,
    ZeroValue,
    ZeroAtIntegerPole,
    NotCoprime,
    ConvergenceViolation,
    EssentialAssumptionViolated,
    NoAccelerator,
    InsufficientData,
    hp_numeric.DomainViolation,
    ArithmeticError,
)


class UsageError(Exception):
    pass


def default_prec() -> int:
    raw = os.environ.get("ZETACF_PREC")
    if not raw:
        return 30
    try:
        prec = int(raw)
    except ValueError:
        raise UsageError(f"ZETACF_PREC must be an integer, got {raw!r}")
    if prec < 10:
        raise UsageError("ZETACF_PREC must be at least 10")
    return prec


def _cf_json(cf: GCF) -> dict:
    return {"text": print_cf(cf), **cf_to_json(cf)}


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _prec(args) -> int:
    return args.prec if args.prec is not None else default_prec()


# commands

def cmd_parse(args) -> int:
    cf = parse_cf(args.cf)
    _emit(args, {"cf": _cf_json(cf), "bidegree": list(cf.bidegree())}, print_cf(cf))
    return EXIT_OK


def cmd_eval(args) -> int:
    cf = parse_cf(args.cf)
    if args.exact:
        if args.depth > EXACT_BUDGET:
            raise UsageError(f"--exact needs --depth <= {EXACT_BUDGET}")
        cp = convergents(cf, args.depth)[-1]
        if cp.zero_q:
            raise ZeroDenominator(f"q({args.depth}) = 0")
        val = cp.value
        _emit(args, {"depth": args.depth, "p": format_rat(cp.p), "q": format_rat(cp.q), "value": format_rat(val)},
              format_rat(val))
        return EXIT_OK
    if args.fast:
        from ._kernels import BACKEND, eval_cf_float

        x, err = eval_cf_float(cf, args.depth)
        _emit(args, {"depth": args.depth, "value": repr(x), "err_est": f"{err:.3e}", "backend": BACKEND},
              f"{x!r}  (err_est {err:.3e}, float64/{BACKEND})")
        return EXIT_OK
    prec = _prec(args)
    x, err = eval_cf_numeric(cf, args.depth, prec)
    _emit(args, {"depth": args.depth, "prec": prec, "value": x.decimal_str(prec), "err_est": err.sci_str()},
          f"{x.decimal_str(prec)}  (err_est {err.sci_str()})")
    return EXIT_OK


def cmd_euler(args) -> int:
    f = parse_ratfunc(args.f)
    z = Fraction(args.z)
    cf = euler_transform(f, z, clear=not args.raw)
    _emit(args, {"f": f.format("n"), "z": format_rat(z), "cf": _cf_json(cf)}, print_cf(cf))
    return EXIT_OK


def cmd_multiplier(args) -> int:
    P = parse_poly(args.P)
    res = period_algebra.multiplier(P, args.k, args.sign)
    payload = {
        "P": str(P),
        "k": args.k,
        "sign": args.sign,
        "R": res.R.format("n"),
        "cf": _cf_json(res.cf),
        "period": res.period.to_json(),
        "telescoped": res.telescoped,
    }
    note = "" if res.telescoped else "  (rational part does not telescope; omitted)"
    _emit(args, payload, f"sum = {res.period.format()}{note}\ncf  = {print_cf(res.cf)}")
    return EXIT_OK


def cmd_family(args) -> int:
    spec = period_algebra.FAMILIES.get(args.id)
    if spec is None:
        raise UsageError(f"--id must be 1..8, got {args.id}")
    if args.k < spec.kmin:
        raise UsageError(f"family {args.id} needs --k >= {spec.kmin}")
    lhs, cf = period_algebra.family(args.id, args.k)
    _emit(args, {"id": args.id, "k": args.k, "lhs": lhs.to_json(), "lhs_text": lhs.format(), "cf": _cf_json(cf)},
          f"{lhs.format()} = {print_cf(cf)}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for entry in period_algebra.catalog(args.sign):
        ks = entry.smallest(args.count)
        rows.append({"P": str(entry.P), "condition": entry.describe(), "smallest_k": ks})
    text = "\n".join(f"{r['condition']}; k = {', '.join(map(str, r['smallest_k']))}" for r in rows)
    _emit(args, {"sign": args.sign, "entries": rows}, text)
    return EXIT_OK


def cmd_bm(args) -> int:
    cf = parse_cf(args.cf)
    r = parse_poly(args.r)
    out = bm_step(cf, r, clear=not args.no_clear)
    payload = {"input": _cf_json(cf), "r": r.format("n"), "d": _tail_d(cf, r).format("n"), "output": _cf_json(out)}
    text = print_cf(out)
    if args.check:
        ok = bm_check_relation(cf, r, args.check)
        payload["relation_holds"] = ok
        text += f"\nrelation holds for n <= {args.check}: {ok}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_bm_solve(args) -> int:
    cf = parse_cf(args.cf)
    sols = bm_solve_r(cf, args.deg_bound)
    rows = [{"r": r.format("n"), "d": _tail_d(cf, r).format("n")} for r in sols]
    text = "\n".join(f"r(n) = {row['r']}  (d = {row['d']})" for row in rows) or "no accelerator with constant d"
    _emit(args, {"cf": _cf_json(cf), "solutions": rows}, text)
    return EXIT_OK


def cmd_bm_iterate(args) -> int:
    cf = parse_cf(args.cf)
    steps = bm_iterate_steps(cf, args.steps, args.deg_bound)
    rows = [
        {"step": i + 1, "r": s.r.format("n"), "d": s.d.format("n"), "cf": _cf_json(s.output), "a0": format_rat(s.output.a0)}
        for i, s in enumerate(steps)
    ]
    lines = [f"0: {print_cf(cf)}"] + [f"{row['step']}: {row['cf']['text']}  (r = {row['r']}, d = {row['d']})" for row in rows]
    _emit(args, {"input": _cf_json(cf), "steps": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_psi(args) -> int:
    spec = hp_numeric.PsiSpec(args.r, args.m, args.order, args.shift)
    cf = hp_numeric.psi_cf(spec)
    prec = _prec(args)
    payload = {"r": args.r, "m": args.m, "order": args.order, "shift": args.shift, "cf": _cf_json(cf)}
    lines = [f"psi{chr(39) * args.order}({args.r}/{args.m}) = {print_cf(cf)}"]
    if (args.r, args.m) in hp_numeric.TABLE_ROWS:
        closed = hp_numeric.psi_table(args.r, args.m, args.order)
        payload["closed_form"] = closed.to_json()
        lines.append(f"closed form: {closed.format()}")
    if args.depth:
        x, err = eval_cf_numeric(cf, args.depth, prec)
        direct = hp_numeric.psi_value(args.r, args.m, args.order, prec)
        payload.update(value=x.decimal_str(prec), err_est=err.sci_str(), hurwitz=direct.decimal_str(prec))
        lines.append(f"cf value  {x.decimal_str(prec)}  (err_est {err.sci_str()})")
        lines.append(f"hurwitz   {direct.decimal_str(prec)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_psi_table(args) -> int:
    rows = []
    for r, m in hp_numeric.TABLE_ROWS:
        rows.append({
            "z": f"{r}/{m}",
            "psi1": hp_numeric.psi_table(r, m, 1).to_json(),
            "psi2": hp_numeric.psi_table(r, m, 2).to_json(),
        })
    text = "\n".join(
        f"{r}/{m:<3} psi' = {hp_numeric.psi_table(r, m, 1).format():28} psi'' = {hp_numeric.psi_table(r, m, 2).format()}"
        for r, m in hp_numeric.TABLE_ROWS
    )
    _emit(args, {"rows": rows}, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, _prec(args), args.depth)
    payload = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for e in report.entries:
            err = f"  err {e.error}" if e.error else ""
            print(f"{e.status.upper():4}  {e.id}{err}")
        c = report.counts()
        print(f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped")
    return EXIT_OK if report.ok else EXIT_FAIL


# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    ap = _Parser(prog="zetacf", description="Continued fractions for zeta values and related periods.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("parse", cmd_parse, "parse and print a continued fraction")
    p.add_argument("--cf", required=True)

    p = add("eval", cmd_eval, "evaluate a continued fraction")
    p.add_argument("--cf", required=True)
    p.add_argument("--depth", type=int, default=1000)
    p.add_argument("--prec", type=int, default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact convergent p(N)/q(N)")
    mode.add_argument("--fast", action="store_true", help="double-precision preview")

    p = add("euler", cmd_euler, "continued fraction of sum z^n/f(n)")
    p.add_argument("--f", required=True)
    p.add_argument("--z", default="1")
    p.add_argument("--raw", action="store_true", help="keep rational entries")

    p = add("multiplier", cmd_multiplier, "continued fraction from a multiplier polynomial")
    p.add_argument("--P", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")

    p = add("family", cmd_family, "member k of a multiplier family")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("catalog", cmd_catalog, "known multiplier polynomials")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--count", type=int, default=3)

    p = add("bm", cmd_bm, "one Bauer-Muir step")
    p.add_argument("--cf", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--no-clear", action="store_true")
    p.add_argument("--check", type=int, default=0, metavar="N", help="also check the convergent relation up to N")

    p = add("bm-solve", cmd_bm_solve, "accelerators with constant d")
    p.add_argument("--cf", required=True)
    p.add_argument("--deg-bound", type=int, default=None)

    p = add("bm-iterate", cmd_bm_iterate, "repeat Bauer-Muir acceleration")
    p.add_argument("--cf", required=True)
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("--deg-bound", type=int, default=None)

    p = add("psi", cmd_psi, "continued fraction for psi'(r/m) or psi''(r/m)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--prec", type=int, default=None)

    add("psi-table", cmd_psi_table, "closed forms at rational arguments")

    p = add("verify", cmd_verify, "run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--prec", type=int, default=None)
    p.add_argument("--depth", type=int, default=2000)
    p.add_argument("--out", default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExprSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _COMPUTE_ERRORS as exc:
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
