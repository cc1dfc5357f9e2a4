"""Compiled hot loops. Signatures mirror :mod:`kronkit._fallback` exactly."""
from libc.math cimport fabs, sqrt

NAME = "compiled"


def jacobi_sweeps(double[::1, :] U, double[::1, :] V, double tol, double floor,
                  int max_sweeps):
    """One-sided Jacobi on the columns of ``U``, accumulating rotations in ``V``.

    Both arrays are updated in place. Returns ``(sweeps, converged)``.
    """
    cdef Py_ssize_t rows = U.shape[0], n = U.shape[1], nv = V.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double alpha, beta, gamma, zeta, t, c, s, a, b
    cdef int sweep, rotated
    for sweep in range(max_sweeps):
        rotated = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(rows):
                    a = U[k, i]
                    b = U[k, j]
                    alpha += a * a
                    beta += b * b
                    gamma += a * b
                if alpha < floor or beta < floor:
                    continue
                if fabs(gamma) <= tol * sqrt(alpha) * sqrt(beta):
                    continue
                rotated = 1
                zeta = (beta - alpha) / (2.0 * gamma)
                if fabs(zeta) > 1e150:
                    t = 0.5 / zeta
                elif zeta >= 0.0:
                    t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                for k in range(rows):
                    a = U[k, i]
                    b = U[k, j]
                    U[k, i] = c * a - s * b
                    U[k, j] = s * a + c * b
                for k in range(nv):
                    a = V[k, i]
                    b = V[k, j]
                    V[k, i] = c * a - s * b
                    V[k, j] = s * a + c * b
        if not rotated:
            return sweep + 1, True
    return max_sweeps, False


def kron_fill(const double[:, :] B, const double[:, :] C, double[::1, :] out):
    """Write ``B (x) C`` into ``out`` block by block, column sweeps inside each block."""
    cdef Py_ssize_t m = B.shape[0], n = B.shape[1], p = C.shape[0], q = C.shape[1]
    cdef Py_ssize_t i, j, s, t, r0, c0
    cdef double bij
    for j in range(n):
        c0 = j * q
        for i in range(m):
            bij = B[i, j]
            r0 = i * p
            for t in range(q):
                for s in range(p):
                    out[r0 + s, c0 + t] = bij * C[s, t]


def rearrange_gather(const double[:, :] A, Py_ssize_t m, Py_ssize_t n, Py_ssize_t p,
                     Py_ssize_t q, double[::1, :] out):
    """Row ``i + j*m`` of ``out`` receives vec of block ``(i, j)`` of ``A``."""
    cdef Py_ssize_t i, j, s, t
    for t in range(q):
        for s in range(p):
            for j in range(n):
                for i in range(m):
                    out[i + j * m, s + t * p] = A[i * p + s, j * q + t]


def rearrange_scatter(const double[:, :] R, Py_ssize_t m, Py_ssize_t n, Py_ssize_t p,
                      Py_ssize_t q, double[::1, :] out):
    """Inverse of :func:`rearrange_gather`."""
    cdef Py_ssize_t i, j, s, t
    for j in range(n):
        for t in range(q):
            for i in range(m):
                for s in range(p):
                    out[i * p + s, j * q + t] = R[i + j * m, s + t * p]
