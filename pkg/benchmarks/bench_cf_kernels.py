"""Time the float64 CF evaluator: numba kernel vs plain numpy loop vs exact integers.

    python3 benchmarks/bench_cf_kernels.py [--depth 100000] [--repeat 5]
"""
import argparse
import time

from zetacf import _kernels
from zetacf.cf_engine import eval_cf_numeric, parse_cf

CASES = {
    "zeta2": "[[0,2n-1],[2,n^4]]",
    "zeta3": "[[0,2n^3-3n^2+3n-1],[1,-n^6]]",
    "log2_k3": "[[5/6,7],[-1,n^2]]",
}


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--exact-depth", type=int, default=2000)
    args = ap.parse_args()

    if _kernels.forward_float_numba is not None:
        a, b = _kernels.term_arrays(parse_cf(CASES["zeta2"]), 10)
        _kernels.forward_float_numba(a, b)  # compile outside the timing

    print(f"{'case':10} {'backend':8} {'depth':>8} {'seconds':>10} {'value':>22}")
    for name, text in CASES.items():
        cf = parse_cf(text)
        a, b = _kernels.term_arrays(cf, args.depth)
        backends = [("numpy", _kernels.forward_float_numpy)]
        if _kernels.forward_float_numba is not None:
            backends.insert(0, ("numba", _kernels.forward_float_numba))
        for label, fn in backends:
            t, (x, _) = best_of(lambda: fn(a, b), args.repeat)
            print(f"{name:10} {label:8} {args.depth:8d} {t:10.5f} {x:22.16f}")
        t, (x, _) = best_of(lambda: eval_cf_numeric(cf, args.exact_depth, 30), 1)
        print(f"{name:10} {'exact':8} {args.exact_depth:8d} {t:10.5f} {x.decimal_str(16):>22}")


if __name__ == "__main__":
    main()
