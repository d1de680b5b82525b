"""Hot inner loops, each with a numba implementation and a pure-numpy one.

The backend is chosen once at import from ``GKLAB_BACKEND`` (``numba`` or
``numpy``); numba is the default when it imports.  Every entry point also
takes ``backend=`` to force one path, which is what the tests and the
benchmark use to compare them.
"""
import os

import numpy as np

from . import _numpy

try:
    from . import _numba
except ImportError:  # numba missing or broken
    _numba = None

BACKENDS = ("numba", "numpy") if _numba is not None else ("numpy",)

_requested = os.environ.get("GKLAB_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"GKLAB_BACKEND must be 'numba' or 'numpy', not {_requested!r}")
BACKEND = _requested if _requested in BACKENDS else "numpy"


def _impl(backend):
    backend = backend or BACKEND
    if backend == "numba" and _numba is not None:
        return _numba
    if backend in ("numba", "numpy"):
        return _numpy
    raise ValueError(f"unknown backend {backend!r}")


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def poly_mul(a, b, add, mul, backend=None):
    """Schoolbook product of two dense polynomials over a small field given by tables."""
    a, b = _i64(a), _i64(b)
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    return _impl(backend).poly_mul(a, b, _i64(add), _i64(mul))


def mat3_batch(A, B, field, backend=None):
    """``A[k] @ B`` over F_{q^2} for a stack of flattened 3x3 matrices."""
    A, B = _i64(A).reshape(-1, 9), _i64(B).reshape(9)
    impl = _impl(backend)
    if impl is _numpy:
        return impl.mat3_batch(A, B, field.exp_table, field.log_table, field.small_add, field.n2)
    return impl.mat3_batch(A, B, field.exp_table, field.log_table, field.zech_table)


def rank(M, field, backend=None):
    """Rank over F_{q^2} by exact Gaussian elimination."""
    M = _i64(M)
    if M.ndim != 2 or 0 in M.shape:
        return 0
    impl = _impl(backend)
    if impl is _numpy:
        return int(impl.rank(M, field.exp_table, field.log_table, field.small_add, field.n2, field.neg_one))
    return int(impl.rank(M, field.exp_table, field.log_table, field.zech_table, field.neg_one))
