"""The mod-p reduction kernel exists twice (numba-jitted loops and a
vectorized numpy fallback); they must be indistinguishable output-wise,
and the GMALG_BACKEND flag must actually select between them."""

import os
import subprocess
import sys

import numpy as np
import pytest

from gmalg import backend
from gmalg.rng import XorShift64Star


def random_matrix(stream, rows, cols, p):
    return np.array(
        [[stream.below(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64
    )


def test_known_reduction():
    a = np.array([[2, 1], [3, 4]], dtype=np.int64)
    red, piv, rank = backend.rref_mod_p(a, 5)
    assert red.tolist() == [[1, 3], [0, 0]]
    assert piv.tolist() == [0]
    assert rank == 1


@pytest.mark.skipif(not backend.HAS_NUMBA, reason="numba backend not active in this run")
def test_backends_agree_on_random_matrices():
    stream = XorShift64Star(2024)
    for p in (5, 7, 11):
        for _ in range(25):
            rows = 1 + stream.below(8)
            cols = 1 + stream.below(8)
            a = random_matrix(stream, rows, cols, p)
            rn, pn, kn = backend.rref_mod_p_numpy(a.copy(), p)
            rj, pj, kj = backend.rref_mod_p_numba(a.copy(), p)
            assert kn == kj
            assert pn.tolist() == pj.tolist()
            assert np.array_equal(rn, rj)


def test_numpy_fallback_is_idempotent():
    stream = XorShift64Star(99)
    a = random_matrix(stream, 6, 9, 5)
    red, piv, rank = backend.rref_mod_p_numpy(a, 5)
    red2, piv2, rank2 = backend.rref_mod_p_numpy(red, 5)
    assert rank == rank2 and piv.tolist() == piv2.tolist()
    assert np.array_equal(red, red2)


def _active_backend_under(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("GMALG_BACKEND", None)
    else:
        env["GMALG_BACKEND"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "from gmalg import backend; print(backend.ACTIVE_BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return out.stdout.strip()


def test_env_flag_selects_backend():
    assert _active_backend_under("numpy") == "numpy"
    if backend.HAS_NUMBA or _active_backend_under(None) == "numba":
        assert _active_backend_under("numba") == "numba"


def test_numba_wrapper_raises_when_disabled():
    # run in a forced-numpy subprocess so the guard is exercised even when
    # numba is importable here
    env = dict(os.environ, GMALG_BACKEND="numpy")
    code = (
        "import numpy as np\n"
        "from gmalg import backend\n"
        "assert not backend.HAS_NUMBA\n"
        "try:\n"
        "    backend.rref_mod_p_numba(np.eye(2, dtype=np.int64), 5)\n"
        "except RuntimeError:\n"
        "    print('guarded')\n"
        "else:\n"
        "    raise SystemExit('no RuntimeError raised')\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.strip() == "guarded"
