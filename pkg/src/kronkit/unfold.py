"""Mode-k unfoldings, mode products, multilinear rank and truncated HOSVD.

Modes are 0-based (mode ``k`` here is mode ``k+1`` in 1-based notation).
Column ``c`` of the mode-``k`` unfolding is the fiber at the multi-index
``delinearize(c)`` over the remaining dimensions in ascending mode order, so
the mode-0 unfolding is the column-major storage reinterpreted as a matrix.
"""
from dataclasses import dataclass

import numpy as np

from .dense import as_matrix, as_tensor, fro_norm
from .errors import RangeError, ShapeError
from .svd import as_rank_tol, complete_basis, jacobi_svd, numeric_rank

__all__ = ["ModeUnfolding", "mode_unfold", "mode_fold", "mode_mult", "multilinear_rank", "hosvd", "HosvdResult"]


@dataclass(frozen=True)
class ModeUnfolding:
    mode: int
    matrix: np.ndarray
    source_dims: tuple

    def fold(self):
        return mode_fold(self)


def _check_mode(k, d):
    k = int(k)
    if not 0 <= k < d:
        raise RangeError(f"mode {k} outside [0, {d})")
    return k


def mode_unfold(X, k):
    """``n_k x prod_{j != k} n_j`` matrix of mode-``k`` fibers."""
    X = as_tensor(X)
    k = _check_mode(k, X.ndim)
    M = np.moveaxis(X, k, 0).reshape(X.shape[k], -1, order="F")
    return ModeUnfolding(k, M, tuple(X.shape))


def mode_fold(U):
    """Inverse of :func:`mode_unfold`."""
    dims = tuple(int(n) for n in U.source_dims)
    k = _check_mode(U.mode, len(dims))
    M = as_matrix(U.matrix)
    rest = dims[:k] + dims[k + 1:]
    if M.shape != (dims[k], int(np.prod(rest, dtype=np.int64))):
        raise ShapeError(f"unfolding is {M.shape}, dims {dims} mode {k} need {(dims[k], int(np.prod(rest)))}")
    return np.moveaxis(M.reshape((dims[k],) + rest, order="F"), 0, k)


def mode_mult(X, M, k):
    """Mode-``k`` product: every mode-``k`` fiber of ``X`` is multiplied by ``M``."""
    X = as_tensor(X)
    M = as_matrix(M, "M")
    k = _check_mode(k, X.ndim)
    if M.shape[1] != X.shape[k]:
        raise ShapeError(f"M has {M.shape[1]} columns, mode {k} has size {X.shape[k]}")
    dims = list(X.shape)
    dims[k] = M.shape[0]
    return mode_fold(ModeUnfolding(k, M @ mode_unfold(X, k).matrix, tuple(dims)))


def multilinear_rank(X, tol=None):
    """Tuple of numeric ranks of all mode unfoldings."""
    X = as_tensor(X)
    tol = as_rank_tol(tol)
    return tuple(numeric_rank(jacobi_svd(mode_unfold(X, k).matrix).sigma, tol) for k in range(X.ndim))


@dataclass(frozen=True)
class HosvdResult:
    core: np.ndarray
    factors: list
    error: float
    mode_sigmas: list

    def reconstruct(self):
        Y = self.core
        for k, U in enumerate(self.factors):
            Y = mode_mult(Y, U, k)
        return Y


def hosvd(X, target):
    """Sequentially truncated HOSVD (no HOOI refinement).

    Factor ``k`` holds the leading ``target[k]`` left singular vectors of the
    mode-``k`` unfolding; the core is ``X`` multiplied by every factor
    transpose. ``error`` is the Frobenius distance of the reconstruction.
    """
    X = as_tensor(X)
    target = tuple(int(r) for r in target)
    if len(target) != X.ndim:
        raise RangeError(f"target {target} has {len(target)} entries, tensor order is {X.ndim}")
    for k, (r, n) in enumerate(zip(target, X.shape)):
        if not 1 <= r <= n:
            raise RangeError(f"target rank {r} for mode {k} outside [1, {n}]")
    factors, sigmas = [], []
    for k, r in enumerate(target):
        res = jacobi_svd(mode_unfold(X, k).matrix)
        sigmas.append(res.sigma)
        # thin SVD may return fewer than n_k columns when the unfolding is wide-short
        factors.append(complete_basis(res.u, r) if r > res.u.shape[1] else res.u[:, :r].copy())
    core = X
    for k, U in enumerate(factors):
        core = mode_mult(core, U.T, k)
    out = HosvdResult(core, factors, 0.0, sigmas)
    return HosvdResult(core, factors, fro_norm(X - out.reconstruct()), sigmas)
