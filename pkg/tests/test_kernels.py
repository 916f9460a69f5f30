import os
import subprocess
import sys

import pytest

from zetacf import _kernels
from zetacf.cf_engine import eval_cf_numeric, parse_cf

CFS = ["[[0,1],[1,n^2]]", "[[0,2n-1],[2,n^4]]", "[[5/6,7],[-1,n^2]]", "[[0,1,8(n-1)],[1,(2n-1)^4]]",
       "[[8,2n^4-4n^3+10n^2-8n+3],[-1,-n^8]]"]


@pytest.mark.parametrize("text", CFS)
@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_float_matches_fixed_point(text, backend):
    cf = parse_cf(text)
    exact, _ = eval_cf_numeric(cf, 500, 30)
    x, err = _kernels.eval_cf_float(cf, 500, backend)
    assert x == pytest.approx(float(exact), rel=1e-12)
    assert err >= 0


def test_backends_agree_deep():
    cf = parse_cf("[[0,2n^3-3n^2+3n-1],[1,-n^6]]")
    a = _kernels.eval_cf_float(cf, 20000, "numpy")
    b = _kernels.eval_cf_float(cf, 20000, "numba")
    assert a[0] == pytest.approx(b[0], rel=1e-13)


def test_bad_arguments():
    cf = parse_cf(CFS[0])
    with pytest.raises(ValueError):
        _kernels.eval_cf_float(cf, 0)
    with pytest.raises(ValueError):
        _kernels.eval_cf_float(cf, 10, "cuda")


def _backend_with(env_value):
    env = dict(os.environ)
    env.pop("ZETACF_DISABLE_NUMBA", None)
    if env_value is not None:
        env["ZETACF_DISABLE_NUMBA"] = env_value
    out = subprocess.run([sys.executable, "-c", "from zetacf._kernels import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_flag_selects_backend():
    assert _backend_with(None) == "numba"
    assert _backend_with("1") == "numpy"
