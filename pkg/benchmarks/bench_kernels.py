"""Compare the jitted kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import random
import time

import numpy as np

from swo._accel import ordered_partition_table
from swo._accel import kernels_numpy as pure

try:
    from swo._accel import kernels_numba as jitted
except ImportError:
    jitted = None


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def verdict_workload(pairs=400, length=2000, size=8, seed=0):
    rng = random.Random(seed)
    data = []
    for _ in range(pairs):
        ex = np.array([rng.randrange(size) for _ in range(length)], dtype=np.int64)
        ey = np.array([rng.randrange(size) for _ in range(length)], dtype=np.int64)
        data.append((ex, ey))

    def run(mod):
        for ex, ey in data:
            mod.verdict_run(ex, ey, size)

    return run


def extension_workload(instances=300, n=7, seed=1):
    rng = random.Random(seed)
    table = ordered_partition_table(n)
    data = []
    for _ in range(instances):
        mat = np.eye(n, dtype=bool)
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < 0.2:
                    mat[i, j] = True
        for k in range(n):
            mat |= np.outer(mat[:, k], mat[k, :])
        pvec = np.array([rng.randint(-1, 2) for _ in range(n)], dtype=np.int64)
        qvec = np.array([rng.randint(-1, 2) for _ in range(n)], dtype=np.int64)
        data.append((mat, pvec, qvec))

    def run(mod):
        for mat, pvec, qvec in data:
            mod.find_extension(table, mat, pvec, qvec)

    return run


def main():
    rows = []
    workloads = [
        ("verdict_run (400 pairs x 2000 prefixes)", verdict_workload()),
        ("find_extension (300 scans of 47293 rows)", extension_workload()),
    ]
    for name, run in workloads:
        numpy_time = time_call(run, pure)
        if jitted is None:
            rows.append((name, numpy_time, None))
            continue
        run(jitted)  # warm the jit cache before timing
        numba_time = time_call(run, jitted)
        rows.append((name, numpy_time, numba_time))

    width = max(len(name) for name, *_ in rows)
    print(f"{'workload'.ljust(width)}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, numpy_time, numba_time in rows:
        if numba_time is None:
            print(f"{name.ljust(width)}  {numpy_time:>9.4f}s  {'n/a':>10}  {'n/a':>8}")
        else:
            print(
                f"{name.ljust(width)}  {numpy_time:>9.4f}s  {numba_time:>9.4f}s"
                f"  {numpy_time / numba_time:>7.1f}x"
            )


if __name__ == "__main__":
    main()
