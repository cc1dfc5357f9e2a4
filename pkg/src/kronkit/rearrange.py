"""Block partitions and the Van Loan-Pitsianis rearrangement.

An ``(m*p) x (n*q)`` matrix is viewed as an ``m x n`` grid of ``p x q``
blocks. Blocks are enumerated column-major over the grid, ``k = i + j*m``;
:func:`rearrange` puts ``vec(A_ij)`` in row ``k``, so that
``rearrange(kron(B, C)) == outer(vec(B), vec(C))``.

Using the transposed grid order instead would only permute the rows of the
rearranged matrix. Singular values, Kronecker ranks and nearest-Kronecker
factors do not depend on that choice; raw ``rearrange`` output does.
"""
from dataclasses import dataclass

import numpy as np

from . import _backend
from .dense import as_matrix, as_tensor
from .errors import ShapeError

__all__ = ["BlockShape", "rearrange", "unrearrange", "matrix_to_tensor4", "tensor4_to_matrix"]


@dataclass(frozen=True)
class BlockShape:
    """``m x n`` grid of ``p x q`` blocks."""

    m: int
    n: int
    p: int
    q: int

    def __post_init__(self):
        for field in ("m", "n", "p", "q"):
            value = getattr(self, field)
            if int(value) != value or value < 1:
                raise ShapeError(f"BlockShape.{field} must be a positive integer, got {value!r}")
            object.__setattr__(self, field, int(value))

    @classmethod
    def parse(cls, grid, block):
        """Build from CLI-style strings, e.g. ``parse("2x3", "4x4")``."""
        try:
            m, n = (int(v) for v in grid.lower().split("x"))
            p, q = (int(v) for v in block.lower().split("x"))
        except ValueError:
            raise ShapeError(f"cannot parse grid {grid!r} / block {block!r}; expected AxB") from None
        return cls(m, n, p, q)

    @classmethod
    def of(cls, B, C):
        """Shape of ``kron(B, C)`` partitioned into ``C``-sized blocks."""
        B = np.asarray(B)
        C = np.asarray(C)
        return cls(B.shape[0], B.shape[1], C.shape[0], C.shape[1])

    @property
    def host_shape(self):
        return (self.m * self.p, self.n * self.q)

    @property
    def rearranged_shape(self):
        return (self.m * self.n, self.p * self.q)

    def check(self, A, name="A"):
        if A.shape != self.host_shape:
            raise ShapeError(
                f"{name} is {A.shape[0]}x{A.shape[1]} but grid {self.m}x{self.n} of "
                f"{self.p}x{self.q} blocks needs {self.host_shape[0]}x{self.host_shape[1]}"
            )

    def block(self, A, i, j):
        """Block ``(i, j)`` of ``A`` (a view)."""
        p, q = self.p, self.q
        return A[i * p:(i + 1) * p, j * q:(j + 1) * q]

    def __str__(self):
        return f"{self.m}x{self.n} grid of {self.p}x{self.q} blocks"


def rearrange(A, shape):
    """Rearranged ``mn x pq`` matrix whose row ``i + j*m`` is ``vec(A_ij)``."""
    A = as_matrix(A)
    shape.check(A)
    out = np.empty(shape.rearranged_shape, order="F")
    _backend.get().rearrange_gather(A, shape.m, shape.n, shape.p, shape.q, out)
    return out


def unrearrange(R, shape):
    """The unique ``A`` with ``rearrange(A, shape) == R``."""
    R = as_matrix(R)
    if R.shape != shape.rearranged_shape:
        raise ShapeError(f"rearranged matrix is {R.shape}, {shape} needs {shape.rearranged_shape}")
    out = np.empty(shape.host_shape, order="F")
    _backend.get().rearrange_scatter(R, shape.m, shape.n, shape.p, shape.q, out)
    return out


def matrix_to_tensor4(A, shape):
    """Order-4 ``p x q x m x n`` view: entry ``(s, t, i, j)`` is ``A[i*p + s, j*q + t]``."""
    A = as_matrix(A)
    shape.check(A)
    t4 = A.reshape(shape.m, shape.p, shape.n, shape.q).transpose(1, 3, 0, 2)
    return np.array(t4, order="F")


def tensor4_to_matrix(X):
    """Inverse of :func:`matrix_to_tensor4`; the block shape is read off ``X``."""
    X = as_tensor(X)
    if X.ndim != 4:
        raise ShapeError(f"expected an order-4 tensor, got order {X.ndim}")
    p, q, m, n = X.shape
    return np.ascontiguousarray(X.transpose(2, 0, 3, 1)).reshape(m * p, n * q)
