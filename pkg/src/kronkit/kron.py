"""Kronecker products, the vec-trick matvec and block stacking."""
import numpy as np

from . import _backend
from .dense import as_matrix, as_vector, fro_norm
from .errors import ShapeError, SizeError
from .rearrange import BlockShape

__all__ = ["kron", "kron_matvec", "KronOperator", "blockvec", "blockmat"]

_INDEX_MAX = np.iinfo(np.intp).max


def kron(B, C):
    """Materialize ``B (x) C``: block ``(i, j)`` of the result is ``B[i, j] * C``."""
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    rows = B.shape[0] * C.shape[0]
    cols = B.shape[1] * C.shape[1]
    if rows > _INDEX_MAX // cols:
        raise SizeError(f"kron result {rows}x{cols} overflows the index type")
    out = np.empty((rows, cols), order="F")
    _backend.get().kron_fill(B, C, out)
    return out


def kron_matvec(B, C, x):
    """``kron(B, C) @ x`` computed as ``vec(C @ X @ B.T)`` with ``X = unvec(x)``."""
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    n, q = B.shape[1], C.shape[1]
    x = as_vector(x, n * q, "x")
    X = x.reshape(q, n, order="F")
    return (C @ X @ B.T).ravel(order="F")


class KronOperator:
    """Lazy ``B (x) C``; never forms the product unless :meth:`materialize` is called."""

    def __init__(self, b, c):
        self.b = as_matrix(b, "B")
        self.c = as_matrix(c, "C")

    @property
    def shape(self):
        return (self.b.shape[0] * self.c.shape[0], self.b.shape[1] * self.c.shape[1])

    @property
    def block_shape(self):
        return BlockShape.of(self.b, self.c)

    def apply(self, x):
        return kron_matvec(self.b, self.c, x)

    def rapply(self, y):
        """``kron(B, C).T @ y``."""
        return kron_matvec(self.b.T, self.c.T, y)

    __matmul__ = apply

    def materialize(self):
        return kron(self.b, self.c)

    def fro_norm(self):
        return fro_norm(self.b) * fro_norm(self.c)

    def __repr__(self):
        return f"KronOperator({self.b.shape} x {self.c.shape})"


def blockvec(A, shape):
    """Stack the ``p x q`` blocks of ``A`` vertically, block ``i + j*m`` at rows ``[k*p, (k+1)*p)``."""
    A = as_matrix(A)
    shape.check(A)
    m, n, p, q = shape.m, shape.n, shape.p, shape.q
    # [i, s, j, t] -> [s, i, j, t]; C-order rows then enumerate (j, i, s) with s fastest
    t4 = A.reshape(m, p, n, q).transpose(2, 0, 1, 3)
    return np.ascontiguousarray(t4).reshape(m * n * p, q)


def blockmat(V, shape):
    """Inverse of :func:`blockvec`."""
    V = as_matrix(V)
    m, n, p, q = shape.m, shape.n, shape.p, shape.q
    if V.shape != (m * n * p, q):
        raise ShapeError(f"stacked blocks are {V.shape}, {shape} needs {(m * n * p, q)}")
    t4 = V.reshape(n, m, p, q).transpose(1, 2, 0, 3)
    return np.ascontiguousarray(t4).reshape(m * p, n * q)
