"""Nearest Kronecker product, Kronecker rank and r-term Kronecker-sum approximation.

All three reduce to an SVD of ``rearrange(A, shape)``: a rank-1 term
``sigma * u v^T`` of the rearranged matrix folds back into
``kron(unvec(sqrt(sigma) u), unvec(sqrt(sigma) v))``. The scale is split
evenly, so ``fro_norm(B_k) == fro_norm(C_k) == sqrt(sigma_k)``.
"""
from dataclasses import dataclass, field

import numpy as np

from .dense import as_matrix, fro_norm
from .errors import ContractError, ConvergenceError, DegenerateInputError, RangeError, ShapeError
from .kron import kron
from .rearrange import BlockShape, rearrange
from .svd import as_rank_tol, dominant_triplet, jacobi_svd, numeric_rank

__all__ = ["KronTermList", "nearest_kron", "kron_sum_approx", "kron_rank", "kron_spectrum"]

# power-iteration budget before falling back to the full Jacobi SVD
POWER_MAX_ITER = 500


@dataclass(frozen=True)
class KronTermList:
    """``sum_k kron(B_k, C_k)`` with the singular values the terms came from."""

    shape: BlockShape
    terms: list = field(default_factory=list)
    sigmas: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        s = self.shape
        for B, C in self.terms:
            if B.shape != (s.m, s.n) or C.shape != (s.p, s.q):
                raise ShapeError(f"term factors {B.shape}, {C.shape} do not match {s}")
        if len(self.sigmas) != len(self.terms):
            raise ContractError("one sigma per term required")
        if np.any(np.diff(self.sigmas) > 0):
            raise ContractError("sigmas must be descending")

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def materialize(self):
        out = np.zeros(self.shape.host_shape, order="F")
        for B, C in self.terms:
            out += kron(B, C)
        return out


def _fold(shape, sigma, u, v):
    root = np.sqrt(sigma)
    B = (root * u).reshape(shape.m, shape.n, order="F")
    C = (root * v).reshape(shape.p, shape.q, order="F")
    return B, C


def kron_spectrum(A, shape):
    """Singular values of ``rearrange(A, shape)``."""
    return jacobi_svd(rearrange(A, shape)).sigma


def nearest_kron(A, shape):
    """``(B, C, residual)`` minimizing ``fro_norm(A - kron(B, C))``.

    Uses power iteration on the rearranged matrix and falls back to the full
    Jacobi SVD when the iteration stalls (small gap between the two leading
    singular values). ``residual`` is recomputed from the materialized
    approximant.
    """
    A = as_matrix(A)
    shape.check(A)
    if not np.any(A):
        raise DegenerateInputError("nearest Kronecker product of a zero matrix has no scale split")
    R = rearrange(A, shape)
    try:
        sigma, u, v = dominant_triplet(R, max_iter=POWER_MAX_ITER)
    except ConvergenceError:
        res = jacobi_svd(R)
        sigma, u, v = float(res.sigma[0]), res.u[:, 0], res.v[:, 0]
    B, C = _fold(shape, sigma, u, v)
    return B, C, fro_norm(A - kron(B, C))


def kron_sum_approx(A, shape, r):
    """Best ``r``-term Kronecker sum; returns ``(KronTermList, residual)``.

    ``residual`` is the Eckart-Young tail of the rearranged spectrum.
    On ties at the truncation boundary the first ``r`` triplets in the
    kernel's order are kept, so the terms are then basis-dependent.
    """
    A = as_matrix(A)
    shape.check(A)
    r = int(r)
    rmax = min(shape.rearranged_shape)
    if not 1 <= r <= rmax:
        raise RangeError(f"number of terms {r} outside [1, {rmax}]")
    res = jacobi_svd(rearrange(A, shape))
    terms = [_fold(shape, res.sigma[k], res.u[:, k], res.v[:, k]) for k in range(r)]
    tail = res.sigma[r:]
    return KronTermList(shape, terms, res.sigma[:r].copy()), float(np.sqrt(np.sum(tail * tail)))


def kron_rank(A, shape, tol=None):
    """Numerical Kronecker rank: the numeric rank of ``rearrange(A, shape)``."""
    A = as_matrix(A)
    shape.check(A)
    return numeric_rank(kron_spectrum(A, shape), as_rank_tol(tol))
