"""numba kernels.

The F_{q^2} kernels work on discrete logs: -1 encodes zero, products are sums
of logs, and sums go through ``zech[k] = log(1 + gen^k)`` (-1 where that sum
vanishes).  ``ex`` is the doubled exp table, ``lg`` the log table.
"""
import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _lmul(a, b, m):
    if a < 0 or b < 0:
        return -1
    s = a + b
    return s - m if s >= m else s


@njit(cache=True, inline="always")
def _ladd(a, b, zech, m):
    if a < 0:
        return b
    if b < 0:
        return a
    d = b - a
    if d < 0:
        d += m
    z = zech[d]
    if z < 0:
        return -1
    s = a + z
    return s - m if s >= m else s


@njit(cache=True)
def _to_logs(A, lg):
    out = np.empty(A.shape, dtype=np.int64)
    flat_in, flat_out = A.ravel(), out.ravel()
    for i in range(flat_in.shape[0]):
        v = flat_in[i]
        flat_out[i] = lg[v] if v != 0 else -1
    return out


@njit(cache=True)
def poly_mul(a, b, add, mul):
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    for i in range(a.shape[0]):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(b.shape[0]):
            bj = b[j]
            if bj != 0:
                out[i + j] = add[out[i + j], mul[ai, bj]]
    return out


@njit(cache=True)
def mat3_batch(A, B, ex, lg, zech):
    """Row-major 3x3 products ``A[k] @ B`` for a stack ``A`` of shape (N, 9)."""
    m = zech.shape[0]
    N = A.shape[0]
    out = np.zeros((N, 9), dtype=np.int64)
    lb = _to_logs(B, lg)
    la = np.empty(3, dtype=np.int64)
    for k in range(N):
        for i in range(3):
            for t in range(3):
                v = A[k, 3 * i + t]
                la[t] = lg[v] if v != 0 else -1
            for j in range(3):
                s = -1
                for t in range(3):
                    s = _ladd(s, _lmul(la[t], lb[3 * t + j], m), zech, m)
                out[k, 3 * i + j] = ex[s] if s >= 0 else 0
    return out


@njit(cache=True)
def rank(M, ex, lg, zech, neg1):
    L = _to_logs(M, lg)
    rows, cols = L.shape
    m = zech.shape[0]
    lneg1 = lg[neg1]
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if L[i, c] >= 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = L[r, j]
                L[r, j] = L[piv, j]
                L[piv, j] = tmp
        # scale the pivot row to a leading 1 (log 0)
        shift = m - L[r, c]
        for j in range(c, cols):
            L[r, j] = _lmul(L[r, j], shift % m, m)
        for i in range(r + 1, rows):
            f = L[i, c]
            if f >= 0:
                nf = _lmul(f, lneg1, m)
                for j in range(c, cols):
                    L[i, j] = _ladd(L[i, j], _lmul(nf, L[r, j], m), zech, m)
        r += 1
        if r == rows:
            break
    return r
