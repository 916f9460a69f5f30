"""Float64 preview evaluation of continued fractions.

The forward recurrence runs in a numba-compiled loop when numba is present
and ``ZETACF_DISABLE_NUMBA`` is unset; otherwise the same loop runs in plain
Python over numpy arrays.  Results are double precision only and are meant
for quick looks and benchmarking, never for verification.
"""
from __future__ import annotations

import math
import os

import numpy as np

from .cf_engine import GCF, clear_denominators

_RESCALE = 1e150


def _forward_py(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    p2, q2 = 1.0, 0.0
    p1, q1 = a[0], 1.0
    prev = math.nan
    for n in range(1, a.shape[0]):
        p, q = a[n] * p1 + b[n - 1] * p2, a[n] * q1 + b[n - 1] * q2
        prev = p1 / q1 if q1 != 0.0 else math.nan
        p2, q2, p1, q1 = p1, q1, p, q
        if abs(p1) > _RESCALE or abs(q1) > _RESCALE:
            p1 /= _RESCALE
            q1 /= _RESCALE
            p2 /= _RESCALE
            q2 /= _RESCALE
    return p1 / q1, prev


def _disabled() -> bool:
    return os.environ.get("ZETACF_DISABLE_NUMBA", "").strip() not in ("", "0")


try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

forward_float_numba = njit(cache=False)(_forward_py) if njit is not None else None

if forward_float_numba is not None and not _disabled():
    BACKEND = "numba"
    forward_float = forward_float_numba
else:
    BACKEND = "numpy"
    forward_float = _forward_py

forward_float_numpy = _forward_py


def term_arrays(cf: GCF, depth: int) -> tuple[np.ndarray, np.ndarray]:
    """``a(0..depth)`` and ``b(0..depth)`` as float64 arrays."""
    cf = clear_denominators(cf)
    n = np.arange(depth + 1, dtype=np.float64)
    a = np.polyval([float(c) for c in reversed(cf.A.coeffs)], n)
    b = np.polyval([float(c) for c in reversed(cf.B.coeffs)], n)
    for i, (ai, bi) in enumerate(cf.prefix[: depth + 1]):
        a[i] = float(ai)
        b[i] = float(bi)
    return a, b


def eval_cf_float(cf: GCF, depth: int, backend: str | None = None) -> tuple[float, float]:
    """Double-precision value at ``depth`` and ``|x(depth) - x(depth-1)|``."""
    if depth < 1:
        raise ValueError("depth must be positive")
    a, b = term_arrays(cf, depth)
    if backend is None:
        fn = forward_float
    elif backend == "numba":
        if forward_float_numba is None:
            raise RuntimeError("numba is not available")
        fn = forward_float_numba
    elif backend == "numpy":
        fn = forward_float_numpy
    else:
        raise ValueError(f"unknown backend {backend!r}")
    x, prev = fn(a, b)
    return float(x), abs(float(x) - float(prev))
