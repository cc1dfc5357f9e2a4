"""Benchmarks: structured vs materialized Kronecker matvec, and compiled vs python kernels.

Run ``python -m kronkit.bench`` for the backend comparison table.
"""
import argparse
import statistics
import time

import numpy as np

from . import _backend
from .kron import kron, kron_matvec
from .rearrange import BlockShape, rearrange
from .svd import jacobi_svd


def _median_time(fn, reps):
    times = []
    result = None
    for _ in range(reps):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def bench_matvec(m, n, p, q, reps=20, seed=0):
    """Median wall-clock of ``kron(B, C) @ x`` (materialized) vs :func:`kron_matvec`."""
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((m, n))
    C = rng.standard_normal((p, q))
    x = rng.standard_normal(n * q)
    explicit, y_explicit = _median_time(lambda: kron(B, C) @ x, reps)
    structured, y_struct = _median_time(lambda: kron_matvec(B, C, x), reps)
    rel_diff = float(np.linalg.norm(y_explicit - y_struct) / max(np.linalg.norm(y_explicit), 1e-300))
    return {
        "explicit_s": explicit,
        "structured_s": structured,
        "speedup": explicit / structured,
        "rel_diff": rel_diff,
        "reps": reps,
    }


def bench_backends(reps=5, seed=0, sizes=(8, 16, 32, 64)):
    """Time each kernel on every available backend; one dict per (kernel, size, backend)."""
    rng = np.random.default_rng(seed)
    rows = []
    for size in sizes:
        A = rng.standard_normal((size, size))
        side = max(2, int(round(size ** 0.5)))
        B = rng.standard_normal((side, side))
        C = rng.standard_normal((size, size))
        H = rng.standard_normal((side * size, side * size))
        shape = BlockShape(side, side, size, size)
        cases = {
            "jacobi_svd": lambda: jacobi_svd(A),
            "kron": lambda: kron(B, C),
            "rearrange": lambda: rearrange(H, shape),
        }
        for kernel, fn in cases.items():
            for name in _backend.available():
                with _backend.use(name):
                    t, _ = _median_time(fn, reps)
                rows.append({"kernel": kernel, "size": size, "backend": name, "seconds": t})
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sizes", default="8,16,32,64")
    args = parser.parse_args(argv)
    sizes = tuple(int(s) for s in args.sizes.split(","))
    rows = bench_backends(args.reps, args.seed, sizes)
    by_case = {}
    for row in rows:
        by_case.setdefault((row["kernel"], row["size"]), {})[row["backend"]] = row["seconds"]
    print(f"{'kernel':<12}{'size':>6}{'compiled [s]':>15}{'python [s]':>15}{'ratio':>9}")
    for (kernel, size), t in by_case.items():
        comp = t.get("compiled", float("nan"))
        py = t.get("python", float("nan"))
        print(f"{kernel:<12}{size:>6}{comp:>15.3e}{py:>15.3e}{py / comp:>9.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
