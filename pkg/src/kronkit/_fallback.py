"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""
import math

import numpy as np

NAME = "python"


def jacobi_sweeps(U, V, tol, floor, max_sweeps):
    """One-sided Jacobi on the columns of ``U``, accumulating rotations in ``V``.

    Both arrays are updated in place. Returns ``(sweeps, converged)``.
    """
    n = U.shape[1]
    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ui = U[:, i]
                uj = U[:, j]
                alpha = float(ui @ ui)
                beta = float(uj @ uj)
                if alpha < floor or beta < floor:
                    continue
                gamma = float(ui @ uj)
                if abs(gamma) <= tol * math.sqrt(alpha) * math.sqrt(beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                elif zeta >= 0.0:
                    t = 1.0 / (zeta + math.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                U[:, [i, j]] = U[:, [i, j]] @ np.array([[c, s], [-s, c]])
                V[:, [i, j]] = V[:, [i, j]] @ np.array([[c, s], [-s, c]])
        if not rotated:
            return sweep + 1, True
    return max_sweeps, False


def kron_fill(B, C, out):
    """Write ``B (x) C`` into ``out`` block by block."""
    m, n = B.shape
    p, q = C.shape
    for j in range(n):
        for i in range(m):
            out[i * p:(i + 1) * p, j * q:(j + 1) * q] = B[i, j] * C


def rearrange_gather(A, m, n, p, q, out):
    # (mp, nq) -> [i, s, j, t] -> [s, t, i, j] -> column-major (pq, mn) -> transpose
    t4 = A.reshape(m, p, n, q).transpose(1, 3, 0, 2)
    out[:, :] = t4.reshape(p * q, m * n, order="F").T


def rearrange_scatter(R, m, n, p, q, out):
    t4 = R.T.reshape(p, q, m, n, order="F")
    out[:, :] = t4.transpose(2, 0, 3, 1).reshape(m * p, n * q)
