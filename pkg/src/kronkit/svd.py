"""Self-contained SVD: one-sided Jacobi, truncation, power iteration, rank and kappa_2.

Everything here is deterministic: a fixed row-cyclic pivot order in the
Jacobi sweeps and a fixed start vector for the power iteration, no RNG.
Singular vectors follow one sign convention: the first entry of largest
magnitude in each right singular vector is non-negative.
"""
from dataclasses import dataclass

import numpy as np

from . import _backend
from .dense import as_matrix
from .errors import ContractError, ConvergenceError, DomainError, RangeError

__all__ = [
    "SvdResult",
    "RankTolerance",
    "DEFAULT_RANK_TOL",
    "SINGULAR",
    "jacobi_svd",
    "truncated_svd",
    "dominant_triplet",
    "numeric_rank",
    "cond2",
    "complete_basis",
    "as_rank_tol",
]

JACOBI_TOL = 1e-15
MAX_SWEEPS = 60
DEFAULT_RANK_TOL = 1e-10
_TINY = np.finfo(np.float64).tiny
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SvdResult:
    """``A = u @ diag(sigma) @ v.T`` with ``sigma`` descending."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    @property
    def rank(self):
        return self.sigma.shape[0]

    def truncate(self, r):
        return SvdResult(self.u[:, :r], self.sigma[:r], self.v[:, :r])

    def reconstruct(self):
        return (self.u * self.sigma) @ self.v.T


@dataclass(frozen=True)
class RankTolerance:
    """Relative threshold: singular values ``<= rel_tol * sigma_1`` count as zero."""

    rel_tol: float = DEFAULT_RANK_TOL

    def __post_init__(self):
        if not self.rel_tol >= 0:
            raise RangeError(f"rel_tol must be >= 0, got {self.rel_tol}")


class _Singular:
    """Result of :func:`cond2` for matrices with ``sigma_min == 0``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "SINGULAR"

    def __str__(self):
        return "singular"

    def __bool__(self):
        return False


SINGULAR = _Singular()


def as_rank_tol(tol):
    """Coerce ``None``, a float or a :class:`RankTolerance` to a :class:`RankTolerance`."""
    if tol is None:
        return RankTolerance()
    if isinstance(tol, RankTolerance):
        return tol
    return RankTolerance(float(tol))


def complete_basis(Q, k):
    """Extend the orthonormal columns of ``Q`` (``n x r``) to ``k`` columns.

    Candidates are the identity columns in index order, orthogonalized twice
    against the current basis.
    """
    n, r = Q.shape
    if k <= r:
        return Q[:, :k]
    cols = [Q[:, c] for c in range(r)]
    for e in range(n):
        if len(cols) == k:
            break
        w = np.zeros(n)
        w[e] = 1.0
        for _ in range(2):
            for c in cols:
                w -= (c @ w) * c
        nrm = np.linalg.norm(w)
        if nrm > 0.5:
            cols.append(w / nrm)
    if len(cols) < k:
        raise RangeError(f"cannot extend to {k} orthonormal columns in dimension {n}")
    return np.column_stack(cols) if cols else np.zeros((n, 0))


def _fix_signs(u, v):
    for k in range(v.shape[1]):
        col = v[:, k]
        lead = int(np.argmax(np.abs(col)))  # first index on ties
        if col[lead] < 0:
            v[:, k] = -col
            u[:, k] = -u[:, k]


def _jacobi_tall(A, max_sweeps):
    rows, cols = A.shape
    U = np.array(A, dtype=np.float64, order="F", copy=True)
    V = np.eye(cols, order="F")
    sweeps, ok = _backend.get().jacobi_sweeps(U, V, JACOBI_TOL, _TINY, max_sweeps)
    sigma = np.sqrt(np.sum(U * U, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    U = U[:, order]
    V = V[:, order]
    nz = sigma > 0
    U[:, nz] /= sigma[nz]
    if not np.all(nz):
        # columns of exact zeros: any orthonormal completion will do
        r = int(np.count_nonzero(nz))
        U = complete_basis(U[:, :r], cols)
    if not ok:
        raise ConvergenceError(
            f"Jacobi SVD did not converge in {max_sweeps} sweeps",
            last=SvdResult(np.asarray(U), sigma, V),
        )
    return np.asarray(U), sigma, V


def jacobi_svd(A, max_sweeps=MAX_SWEEPS):
    """Thin SVD of ``A`` by one-sided (Hestenes) Jacobi.

    Returns an :class:`SvdResult` with ``min(rows, cols)`` triplets. Wide
    inputs are handled by factoring the transpose.
    """
    A = as_matrix(A)
    if A.shape[0] >= A.shape[1]:
        u, sigma, v = _jacobi_tall(A, max_sweeps)
    else:
        v, sigma, u = _jacobi_tall(A.T, max_sweeps)
    u = np.ascontiguousarray(u)
    v = np.ascontiguousarray(v)
    _fix_signs(u, v)
    return SvdResult(u, sigma, v)


def truncated_svd(A, r):
    """Best rank-``r`` approximation; returns ``(SvdResult, residual)``.

    ``residual`` is the Eckart-Young tail ``sqrt(sum_{k>r} sigma_k^2)``.
    """
    A = as_matrix(A)
    r = int(r)
    if not 1 <= r <= min(A.shape):
        raise RangeError(f"rank {r} outside [1, {min(A.shape)}]")
    full = jacobi_svd(A)
    tail = full.sigma[r:]
    return full.truncate(r), float(np.sqrt(np.sum(tail * tail)))


def dominant_triplet(A, tol=1e-14, max_iter=10_000):
    """Leading singular triplet ``(sigma_1, u_1, v_1)`` by alternating power iteration.

    Starts from the normalized all-ones vector. If the start is annihilated
    by ``A`` (no progress possible), it is replaced by deterministic cosine
    vectors. Convergence: successive estimates differ by ``<= tol * sigma``.
    """
    A = as_matrix(A)
    if not np.any(A):
        raise DomainError("dominant triplet of the zero matrix is undefined")
    cols = A.shape[1]
    v = np.ones(cols) / np.sqrt(cols)
    w = A @ v
    nw = np.linalg.norm(w)
    shift = 1
    while nw == 0.0:
        # start orthogonal to the row space: stagnation before the first step
        v = np.cos(np.arange(cols) * shift + 0.5)
        v /= np.linalg.norm(v)
        w = A @ v
        nw = np.linalg.norm(w)
        shift += 1
        if shift > cols + 1:
            raise ConvergenceError("no start vector escapes the null space")
    u = w / nw
    sigma = 0.0
    for _ in range(max_iter):
        z = A.T @ u
        new_sigma = float(np.linalg.norm(z))
        v = z / new_sigma
        w = A @ v
        u = w / np.linalg.norm(w)
        if abs(new_sigma - sigma) <= tol * new_sigma:
            sigma = new_sigma
            break
        sigma = new_sigma
    else:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations", last=(sigma, u, v)
        )
    # make the returned pair consistent: sigma = u^T A v, v = A^T u / sigma
    z = A.T @ u
    sigma = float(np.linalg.norm(z))
    v = z / sigma
    u2 = u[:, None]
    v2 = v[:, None]
    _fix_signs(u2, v2)
    return sigma, u2[:, 0], v2[:, 0]


def numeric_rank(sigma, tol=None):
    """Number of ``sigma_k > rel_tol * sigma_1`` (0 when ``sigma_1 == 0``)."""
    tol = as_rank_tol(tol)
    s = np.asarray(sigma, dtype=np.float64).ravel()
    if s.size == 0:
        return 0
    if np.any(s < 0) or np.any(np.diff(s) > 0):
        raise ContractError("singular values must be non-negative and descending")
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol.rel_tol * s[0]))


def cond2(A):
    """``sigma_max / sigma_min``, or :data:`SINGULAR` when ``sigma_min`` is zero.

    ``sigma_min`` counts as zero below ``max(rows, cols) * eps * sigma_max``,
    the rounding floor of the Jacobi kernel.
    """
    A = as_matrix(A)
    s = jacobi_svd(A).sigma
    if s[0] == 0 or s[-1] <= max(A.shape) * _EPS * s[0]:
        return SINGULAR
    return float(s[0] / s[-1])
