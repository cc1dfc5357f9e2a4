"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py --sizes 8,16,32,64 --reps 5
"""
from kronkit.bench import main

if __name__ == "__main__":
    raise SystemExit(main())
