"""Dense mod-p kernels backing the exact linear algebra layer.

Two interchangeable backends provide the same four operations:

* ``numba``  -- ``@njit``-compiled loops (default when numba imports),
* ``numpy``  -- pure-numpy implementations.

Select with the environment variable ``QUIVERFOLD_BACKEND=numba|numpy``
(read once at import time).  All kernels take ``int64`` arrays with entries
in ``[0, p)`` and a prime ``p < 2**31``, so every intermediate product fits
in 64-bit arithmetic when reduced after each accumulation.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

# Largest safe summation length for the float64 matmul fast path:
# k * (p-1)**2 must stay below 2**53 for exact integer arithmetic.
_FLOAT_EXACT = float(2**53)


def _np_matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) % p without overflow."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if k * float(p - 1) ** 2 < _FLOAT_EXACT:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return (out % p).astype(np.int64)
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(k):
        acc = (acc + a[:, j : j + 1] * b[j]) % p
    return acc


def _np_rref_mod(mat: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over F_p: returns (rows, pivot columns)."""
    m = np.array(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        hits = np.nonzero(m[row:, col])[0]
        if hits.size == 0:
            continue
        pr = row + int(hits[0])
        if pr != row:
            m[[row, pr]] = m[[pr, row]]
        inv = pow(int(m[row, col]), -1, p)
        m[row] = (m[row] * inv) % p
        other = np.nonzero(m[:, col])[0]
        for r in other:
            if r != row:
                m[r] = (m[r] - m[r, col] * m[row]) % p
        pivots.append(col)
        row += 1
    return m[:row], np.array(pivots, dtype=np.int64)


def _np_residual_mod(
    rows: np.ndarray, pivots: np.ndarray, vecs: np.ndarray, p: int
) -> np.ndarray:
    """Reduce ``vecs`` against an RREF basis; zero residual means membership."""
    vecs = vecs % p
    if rows.shape[0] == 0 or vecs.shape[0] == 0:
        return vecs
    coef = vecs[:, pivots]
    return (vecs - _np_matmul_mod(coef, rows, p)) % p


def _np_pair_products_mod(
    x: np.ndarray, y: np.ndarray, table: np.ndarray, p: int
) -> np.ndarray:
    """All products of rows of ``x`` with rows of ``y`` via structure constants.

    ``table[k, l, m]`` holds the coefficient of basis element ``m`` in the
    product (k-th basis element) * (l-th basis element).  Output row ``i*ry+j``
    is the coordinate vector of ``x[i] * y[j]``.
    """
    rx, n = x.shape
    ry = y.shape[0]
    if rx == 0 or ry == 0:
        return np.zeros((rx * ry, n), dtype=np.int64)
    if n * float(p - 1) ** 2 < _FLOAT_EXACT:
        tf = table.astype(np.float64).reshape(n, n * n)
        t = (x.astype(np.float64) @ tf) % p  # (rx, n*n): sum over k
        t = t.reshape(rx, n, n)
        out = (y.astype(np.float64) @ t) % p  # (rx, ry, n): sum over l
        return out.reshape(rx * ry, n).astype(np.int64)
    out = np.zeros((rx, ry, n), dtype=np.int64)
    for k in range(n):
        xk = x[:, k]
        if not xk.any():
            continue
        for l in range(n):
            tv = table[k, l]
            if not tv.any():
                continue
            inner = (y[:, l : l + 1] * tv[None, :]) % p  # (ry, n), entries < p
            out = (out + xk[:, None, None] * inner[None]) % p
    return out.reshape(rx * ry, n)


def _build_numpy_backend() -> SimpleNamespace:
    return SimpleNamespace(
        name="numpy",
        matmul_mod=_np_matmul_mod,
        rref_mod=_np_rref_mod,
        residual_mod=_np_residual_mod,
        pair_products_mod=_np_pair_products_mod,
    )


def _build_numba_backend() -> SimpleNamespace:
    from numba import njit

    @njit(cache=True)
    def nb_matmul_mod(a, b, p):  # pragma: no cover - compiled
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        for i in range(m):
            for j in range(k):
                aij = a[i, j]
                if aij == 0:
                    continue
                for c in range(n):
                    out[i, c] = (out[i, c] + aij * b[j, c]) % p
        return out

    @njit(cache=True)
    def nb_rref_mod(mat, p):  # pragma: no cover - compiled
        m = mat % p
        nrows, ncols = m.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        row = 0
        for col in range(ncols):
            if row >= nrows:
                break
            pr = -1
            for r in range(row, nrows):
                if m[r, col] != 0:
                    pr = r
                    break
            if pr == -1:
                continue
            if pr != row:
                for c in range(ncols):
                    tmp = m[row, c]
                    m[row, c] = m[pr, c]
                    m[pr, c] = tmp
            # modular inverse by Fermat exponentiation
            inv = np.int64(1)
            base = m[row, col] % p
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for c in range(ncols):
                m[row, c] = (m[row, c] * inv) % p
            for r in range(nrows):
                if r != row and m[r, col] != 0:
                    f = m[r, col]
                    for c in range(ncols):
                        m[r, c] = (m[r, c] - f * m[row, c]) % p
            pivots[row] = col
            row += 1
        return m[:row].copy(), pivots[:row].copy()

    @njit(cache=True)
    def nb_residual_mod(rows, pivots, vecs, p):  # pragma: no cover - compiled
        nv, n = vecs.shape
        out = vecs % p
        nr = rows.shape[0]
        for i in range(nv):
            for r in range(nr):
                f = out[i, pivots[r]]
                if f != 0:
                    for c in range(n):
                        out[i, c] = (out[i, c] - f * rows[r, c]) % p
        return out

    @njit(cache=True)
    def nb_pair_products_mod(x, y, table, p):  # pragma: no cover - compiled
        rx, n = x.shape
        ry = y.shape[0]
        out = np.zeros((rx * ry, n), dtype=np.int64)
        t = np.zeros((n, n), dtype=np.int64)
        for i in range(rx):
            # t[l, m] = sum_k x[i, k] * table[k, l, m]
            for l in range(n):
                for m in range(n):
                    t[l, m] = 0
            for k in range(n):
                xik = x[i, k]
                if xik == 0:
                    continue
                for l in range(n):
                    for m in range(n):
                        v = table[k, l, m]
                        if v != 0:
                            t[l, m] = (t[l, m] + xik * v) % p
            for j in range(ry):
                row = i * ry + j
                for l in range(n):
                    yjl = y[j, l]
                    if yjl == 0:
                        continue
                    for m in range(n):
                        if t[l, m] != 0:
                            out[row, m] = (out[row, m] + yjl * t[l, m]) % p
        return out

    def rref_wrap(mat, p):
        rows, piv = nb_rref_mod(np.ascontiguousarray(mat, dtype=np.int64), p)
        return rows, piv

    return SimpleNamespace(
        name="numba",
        matmul_mod=lambda a, b, p: nb_matmul_mod(
            np.ascontiguousarray(a, dtype=np.int64),
            np.ascontiguousarray(b, dtype=np.int64),
            p,
        ),
        rref_mod=rref_wrap,
        residual_mod=lambda rows, pivots, vecs, p: nb_residual_mod(
            np.ascontiguousarray(rows, dtype=np.int64),
            np.ascontiguousarray(pivots, dtype=np.int64),
            np.ascontiguousarray(vecs, dtype=np.int64),
            p,
        ),
        pair_products_mod=lambda x, y, table, p: nb_pair_products_mod(
            np.ascontiguousarray(x, dtype=np.int64),
            np.ascontiguousarray(y, dtype=np.int64),
            np.ascontiguousarray(table, dtype=np.int64),
            p,
        ),
    )


def get_backend(name: str) -> SimpleNamespace:
    """Build the named backend ('numpy' or 'numba')."""
    if name == "numpy":
        return _build_numpy_backend()
    if name == "numba":
        return _build_numba_backend()
    raise ValueError(f"unknown backend {name!r}")


def _select_default() -> SimpleNamespace:
    requested = os.environ.get("QUIVERFOLD_BACKEND", "numba").strip().lower()
    if requested == "numpy":
        return _build_numpy_backend()
    try:
        return _build_numba_backend()
    except ImportError:
        return _build_numpy_backend()


_active = _select_default()


def active_backend() -> str:
    """Name of the backend selected at import time."""
    return _active.name


def matmul_mod(a, b, p):
    return _active.matmul_mod(a, b, p)


def rref_mod(mat, p):
    return _active.rref_mod(mat, p)


def residual_mod(rows, pivots, vecs, p):
    return _active.residual_mod(rows, pivots, vecs, p)


def pair_products_mod(x, y, table, p):
    return _active.pair_products_mod(x, y, table, p)
