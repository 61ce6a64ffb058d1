"""Row-reduction kernels over a prime field.

Two interchangeable implementations of in-place reduced row echelon form on
int64 matrices with entries in [0, p): a numba @njit triple loop and a
vectorized pure-numpy fallback.  Both scan pivot columns left to right and
take the first nonzero row at or below the cursor, so their outputs are
bit-identical; callers may mix them freely.

Backend selection happens once at import: POSETLAB_BACKEND=numpy forces the
fallback, POSETLAB_BACKEND=numba requires numba.  Default is numba when it
imports, numpy otherwise.
"""

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only on numba-less installs
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


def _rref_inplace_py(a, p, npiv):
    """Reduce `a` in place; pivots only in the first `npiv` columns.

    Returns (rank, pivot_columns).  Elimination always spans the full width,
    so augmented columns beyond `npiv` end up expressed in the pivot basis.
    """
    m, n = a.shape
    piv_cols = np.empty(min(m, npiv), dtype=np.int64)
    r = 0
    for c in range(npiv):
        pr = -1
        for i in range(r, m):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, n):
                tmp = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv_cols[r] = c
        r += 1
        if r == m:
            break
    return r, piv_cols[:r]


def _inv_mod_py(a, p):
    # Fermat inverse; p is prime and a is nonzero mod p.
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


if NUMBA_AVAILABLE:
    _inv_mod = njit(cache=True)(_inv_mod_py)
    _rref_inplace_numba = njit(cache=True)(_rref_inplace_py)
else:
    _inv_mod = _inv_mod_py
    _rref_inplace_numba = None


def _rref_inplace_numpy(a, p, npiv):
    """Vectorized fallback; same pivot choices as the numba kernel."""
    m, n = a.shape
    piv_cols = []
    r = 0
    for c in range(npiv):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr], c:] = a[[pr, r], c:]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return r, np.asarray(piv_cols, dtype=np.int64)


def _pick_backend():
    choice = os.environ.get("POSETLAB_BACKEND", "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("POSETLAB_BACKEND=numba but numba is not importable")
        return "numba"
    if choice:
        raise RuntimeError(f"unrecognized POSETLAB_BACKEND: {choice!r}")
    return "numba" if NUMBA_AVAILABLE else "numpy"


BACKEND = _pick_backend()


def rref_inplace(a, p, npiv):
    """Dispatch to the active backend. `a` must be int64, C-contiguous."""
    if BACKEND == "numba":
        return _rref_inplace_numba(a, p, npiv)
    return _rref_inplace_numpy(a, p, npiv)
