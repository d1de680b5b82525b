"""Pure-numpy counterparts of the numba kernels.

Addition here is component-wise over F_{n^2} via its table, which vectorizes
better than the Zech route.
"""
import numpy as np


def _fadd(a, b, addn, n2):
    a0, b0 = a % n2, b % n2
    a, b = a // n2, b // n2
    a1, b1 = a % n2, b % n2
    return addn[a0, b0] + n2 * (addn[a1, b1] + n2 * addn[a // n2, b // n2])


def _fmul(a, b, ex, lg):
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    out[nz] = ex[lg[a[nz]] + lg[b[nz]]]
    return out


def poly_mul(a, b, add, mul):
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    nb = b.shape[0]
    for i in np.flatnonzero(a):
        seg = out[i : i + nb]
        out[i : i + nb] = add[seg, mul[a[i], b]]
    return out


def mat3_batch(A, B, ex, lg, addn, n2):
    A = np.asarray(A, dtype=np.int64)
    out = np.zeros((A.shape[0], 9), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            s = np.zeros(A.shape[0], dtype=np.int64)
            for t in range(3):
                s = _fadd(s, _fmul(A[:, 3 * i + t], B[3 * t + j], ex, lg), addn, n2)
            out[:, 3 * i + j] = s
    return out


def rank(M, ex, lg, addn, n2, neg1):
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    m = lg.shape[0] - 1
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = ex[(m - lg[M[r, c]]) % m]
        M[r, c:] = _fmul(M[r, c:], inv, ex, lg)
        below = r + 1 + np.flatnonzero(M[r + 1 :, c])
        if below.size:
            nf = _fmul(M[below, c], neg1, ex, lg)
            M[below, c:] = _fadd(M[below, c:], _fmul(nf[:, None], M[r, c:][None, :], ex, lg), addn, n2)
        r += 1
        if r == rows:
            break
    return r
