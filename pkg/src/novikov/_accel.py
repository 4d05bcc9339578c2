"""Modular Gaussian elimination kernels.

Two interchangeable implementations of rank over GF(p) for an int64 matrix:
a numba ``@njit`` loop and a vectorized numpy path. ``rank_mod_p`` picks the
numba one unless numba is missing or ``NOVIKOV_DISABLE_NUMBA`` is set to a
non-empty value other than ``0``.

Entries must already be reduced to ``0 <= a < p`` and ``p < 2**31`` so that a
product of two residues fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

DEFAULT_PRIME = 2_147_483_647  # 2**31 - 1

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _numba_disabled() -> bool:
    flag = os.environ.get("NOVIKOV_DISABLE_NUMBA", "")
    return flag not in ("", "0")


USE_NUMBA = HAVE_NUMBA and not _numba_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def rank_mod_p_numpy(a: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    m = np.array(a, dtype=np.int64, copy=True) % p
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(m[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank, col:] = (m[rank, col:] * inv) % p
        below = rank + 1 + np.flatnonzero(m[rank + 1 :, col])
        if below.size:
            factors = m[below, col][:, None]
            m[below, col:] = (m[below, col:] - (factors * m[rank, col:][None, :]) % p) % p
        rank += 1
    return rank


def _rank_mod_p_loop(m, p):
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(col, ncols):
                tmp = m[rank, c]
                m[rank, c] = m[piv, c]
                m[piv, c] = tmp
        # inverse by Fermat: m[rank, col]^(p-2)
        base = m[rank, col]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for c in range(col, ncols):
            m[rank, c] = (m[rank, c] * inv) % p
        for r in range(rank + 1, nrows):
            f = m[r, col]
            if f != 0:
                for c in range(col, ncols):
                    m[r, c] = (m[r, c] - (f * m[rank, c]) % p + p) % p
        rank += 1
    return rank


if HAVE_NUMBA:
    _rank_mod_p_jit = numba.njit(cache=False)(_rank_mod_p_loop)

    def rank_mod_p_numba(a: np.ndarray, p: int = DEFAULT_PRIME) -> int:
        m = np.ascontiguousarray(np.array(a, dtype=np.int64, copy=True) % p)
        return int(_rank_mod_p_jit(m, np.int64(p)))

else:  # pragma: no cover
    rank_mod_p_numba = None


def rank_mod_p(a: np.ndarray, p: int = DEFAULT_PRIME, backend: str | None = None) -> int:
    backend = backend or BACKEND
    if backend == "numba":
        if rank_mod_p_numba is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        return rank_mod_p_numba(a, p)
    if backend == "numpy":
        return rank_mod_p_numpy(a, p)
    raise ValueError(f"unknown backend {backend!r}")
