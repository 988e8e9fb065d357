"""Compare the numba and numpy wedge-table kernels.

Two measurements:

* the raw kernel on random blade batches, numba against numpy in-process;
* an end-to-end astheno-Kahler check at n = 8, run once per backend in a
  subprocess so that ``NILHERM_DISABLE_NUMBA`` takes effect at import.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from nilherm import kernels
from nilherm._accel import HAS_NUMBA

END_TO_END = """
import time
from nilherm import backend, build_heisenberg, solve_astheno_diagonal, is_astheno_kahler
a = [1, 2, 3, 1, 1, 1, -9]
S = build_heisenberg(8, a)
M = solve_astheno_diagonal(8, a, check=False)
is_astheno_kahler(S, M)  # warm-up (numba compilation, caches)
t = time.perf_counter()
for _ in range(3):
    S = build_heisenberg(8, a)
    assert is_astheno_kahler(S, M).holds
print(backend(), (time.perf_counter() - t) / 3)
"""


def bench_kernel(repeat: int):
    rng = np.random.default_rng(0)
    print(f"{'batch':>12} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for nbits, na, nb in [(8, 16, 16), (12, 64, 64), (16, 256, 128), (16, 1024, 256)]:
        ma = rng.integers(0, 1 << nbits, size=na, dtype=np.int64)
        mb = rng.integers(0, 1 << nbits, size=nb, dtype=np.int64)
        t_np = min(timeit.repeat(lambda: kernels._wedge_table_numpy(ma, mb, nbits), number=5, repeat=repeat)) / 5
        label = f"{na}x{nb}/{nbits}b"
        if HAS_NUMBA:
            kernels.wedge_table(ma, mb, nbits)  # compile
            assert all(np.array_equal(x, y) for x, y in zip(kernels.wedge_table(ma, mb, nbits), kernels._wedge_table_numpy(ma, mb, nbits)))
            t_nb = min(timeit.repeat(lambda: kernels.wedge_table(ma, mb, nbits), number=5, repeat=repeat)) / 5
            print(f"{label:>12} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:8.1f}")
        else:
            print(f"{label:>12} {t_np * 1e3:10.3f} {'n/a':>10} {'':>8}")


def bench_end_to_end():
    for disable in ("1", "0"):
        env = dict(os.environ, NILHERM_DISABLE_NUMBA=disable)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        name, seconds = out.stdout.split()
        print(f"end-to-end astheno check n=8, backend={name}: {float(seconds) * 1e3:.1f} ms")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba available: {HAS_NUMBA}")
    bench_kernel(args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    main()
