"""Dense matrix/tensor carriers and elementary operators.

Matrices and tensors are plain float64 :class:`numpy.ndarray` objects. The
*logical* linearization is always column-major (first index fastest), so
``vec(A)`` is ``A.ravel(order="F")`` regardless of the array's memory layout.
"""
import math

import numpy as np

from .errors import DomainError, RangeError, ShapeError

__all__ = [
    "as_matrix",
    "as_tensor",
    "as_vector",
    "vec",
    "unvec",
    "sym",
    "sgn",
    "fro_norm",
    "inf_norm",
    "linearize",
    "delinearize",
]


def _check_finite(arr):
    if not np.all(np.isfinite(arr)):
        raise DomainError("non-finite entries (NaN/Inf) are not admitted")


def as_matrix(A, name="matrix"):
    """Validate and convert ``A`` to a finite float64 2-D array.

    Degenerate (0-row or 0-column) matrices are rejected.
    """
    arr = np.asarray(A, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} has a zero dimension: {arr.shape}")
    _check_finite(arr)
    return arr


def as_tensor(X, name="tensor"):
    """Validate and convert ``X`` to a finite float64 array with ndim >= 1."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim < 1:
        raise ShapeError(f"{name} must have order >= 1")
    if any(n < 1 for n in arr.shape):
        raise ShapeError(f"{name} has a zero dimension: {arr.shape}")
    _check_finite(arr)
    return arr


def as_vector(x, length=None, name="vector"):
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeError(f"{name} must be 1-D, got ndim={arr.ndim}")
    if length is not None and arr.shape[0] != length:
        raise ShapeError(f"{name} has length {arr.shape[0]}, expected {length}")
    _check_finite(arr)
    return arr


def vec(A):
    """Stack the columns of ``A`` into one vector."""
    return as_matrix(A).ravel(order="F")


def unvec(x, rows, cols):
    """Inverse of :func:`vec`."""
    x = as_vector(x, rows * cols)
    return x.reshape(rows, cols, order="F")


def sym(A):
    """Symmetric part ``(A + A^T) / 2`` of a square matrix."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"sym needs a square matrix, got {A.shape}")
    return (A + A.T) / 2.0


def sgn(x):
    """Mathematical sign: -1, 0 or +1 (``sgn(0) == 0``)."""
    x = float(x)
    if math.isnan(x):
        raise DomainError("sgn of NaN")
    if x > 0:
        return 1.0
    if x < 0:
        return -1.0
    return 0.0


def fro_norm(A):
    """Frobenius norm of a matrix or tensor (2-norm for vectors).

    The squares are summed with correct rounding (``math.fsum``), so the
    result is bit-identical for any permutation of the entries.
    """
    arr = np.asarray(A, dtype=np.float64)
    return math.sqrt(math.fsum((arr * arr).ravel().tolist()))


def inf_norm(A):
    """Maximum absolute row sum."""
    A = as_matrix(A)
    return float(np.max(np.sum(np.abs(A), axis=1)))


def _check_bounds(bounds):
    bounds = tuple(int(n) for n in bounds)
    if not bounds or any(n < 1 for n in bounds):
        raise RangeError(f"bounds must be a non-empty vector of positive ints, got {bounds}")
    return bounds


def linearize(idx, bounds):
    """Column-major rank of multi-index ``idx``: sum_k i_k * prod_{j<k} n_j."""
    bounds = _check_bounds(bounds)
    idx = tuple(int(i) for i in idx)
    if len(idx) != len(bounds):
        raise RangeError(f"index {idx} has order {len(idx)}, bounds have {len(bounds)}")
    ell, stride = 0, 1
    for i, n in zip(idx, bounds):
        if not 0 <= i < n:
            raise RangeError(f"index {idx} out of bounds {bounds}")
        ell += i * stride
        stride *= n
    return ell


def delinearize(ell, bounds):
    """Inverse of :func:`linearize`."""
    bounds = _check_bounds(bounds)
    ell = int(ell)
    if not 0 <= ell < math.prod(bounds):
        raise RangeError(f"linear index {ell} out of range for bounds {bounds}")
    idx = []
    for n in bounds:
        ell, i = divmod(ell, n)
        idx.append(i)
    return tuple(idx)
