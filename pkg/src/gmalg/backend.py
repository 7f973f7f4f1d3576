"""Prime-field elimination kernels: numba-jitted hot path, numpy fallback.

The only genuinely hot loop in this package is dense Gauss-Jordan elimination
mod p (every nullspace / solve call lands here; the largest system in the
test battery is 1320x405 over F_5).  Two interchangeable implementations are
provided:

* ``rref_mod_p_numba`` - scalar loops compiled with ``@njit``;
* ``rref_mod_p_numpy`` - the same algorithm with vectorized row updates.

Selection happens once at import time from the ``GMALG_BACKEND`` environment
variable: unset or ``numba`` prefers the jitted kernel (falling back silently
if numba is unavailable), ``numpy`` forces the fallback.  Both produce
bit-identical output; ``benchmarks/bench_backends.py`` times them against
each other.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "ACTIVE_BACKEND",
    "rref_mod_p",
    "rref_mod_p_numpy",
    "rref_mod_p_numba",
    "HAS_NUMBA",
]


def _rref_mod_p_loops(a, p):
    """Row-reduce ``a`` in place mod p.  Returns (pivot_columns, rank).

    Written with scalar loops only so numba can compile it unchanged; the
    pure-python execution of this exact function is also the reference
    implementation the numpy fallback is tested against.
    """
    rows, cols = a.shape
    pivcols = np.full(cols, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # modular inverse by Fermat: a^(p-2) mod p
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivcols[r] = c
        r += 1
    return pivcols[:r], r


def rref_mod_p_numpy(a: np.ndarray, p: int):
    """Vectorized fallback; same contract as the jitted kernel."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivcols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        # rank-1 update clears the pivot column everywhere else
        a -= np.outer(col, a[r])
        a %= p
        pivcols.append(c)
        r += 1
    return a, np.array(pivcols, dtype=np.int64), r


HAS_NUMBA = False
_rref_jit = None
if os.environ.get("GMALG_BACKEND", "numba").strip().lower() != "numpy":
    try:
        from numba import njit

        _rref_jit = njit(cache=True)(_rref_mod_p_loops)
        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - mirror environments without numba
        HAS_NUMBA = False

ACTIVE_BACKEND = "numba" if HAS_NUMBA else "numpy"


def rref_mod_p_numba(a: np.ndarray, p: int):
    """Jitted kernel wrapper (raises if numba is unavailable/disabled)."""
    if _rref_jit is None:
        raise RuntimeError("numba backend not active (GMALG_BACKEND=numpy or numba missing)")
    a = np.array(a, dtype=np.int64) % p
    pivcols, rank = _rref_jit(a, p)
    return a, np.asarray(pivcols, dtype=np.int64), int(rank)


def rref_mod_p(a: np.ndarray, p: int):
    """Active-backend RREF mod p: returns (reduced matrix, pivot columns, rank)."""
    if ACTIVE_BACKEND == "numba":
        return rref_mod_p_numba(a, p)
    return rref_mod_p_numpy(a, p)
