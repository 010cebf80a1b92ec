"""Compare the jit-compiled and pure-numpy kernel backends.

Runs the same workload (pairwise distance matrix + full pack + oracle calls)
in a fresh subprocess per backend so each one selects its kernels at import.

Usage: python benchmarks/compare_backends.py [n]
"""

import json
import os
import subprocess
import sys

_WORKLOAD = r"""
import json
import sys
import time

import diskpack as dp

n = int(sys.argv[1])
disks = list(dp.gen_random_cap(n, 2, dp.PHI0, seed=42).disks)

# warm up jit compilation outside the timed region
dp.s_distance(disks[0], disks[1], (0.0, 0.0, 1.0))
dp.s_distance_oracle(disks[0], disks[1], (0.0, 0.0, 1.0), resolution=64)

t0 = time.perf_counter()
matrix = dp.build_distance_matrix(disks, (0.0, 0.0, 1.0))
t_matrix = time.perf_counter() - t0

t0 = time.perf_counter()
sol = dp.pack(disks)
t_pack = time.perf_counter() - t0

t0 = time.perf_counter()
for i in range(10):
    dp.s_distance_oracle(disks[i], disks[i + 1], (0.0, 0.0, 1.0),
                         resolution=4096)
t_oracle = time.perf_counter() - t0

print(json.dumps({"backend": dp.BACKEND, "n": n,
                  "matrix_s": t_matrix, "pack_s": t_pack,
                  "oracle10_s": t_oracle,
                  "volume": sol.stats.volume}))
"""


def run(backend, n):
    env = dict(os.environ, DISKPACK_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", _WORKLOAD, str(n)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.splitlines()[-1])


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 96
    results = [run(b, n) for b in ("numba", "numpy")]
    if abs(results[0]["volume"] - results[1]["volume"]) > 1e-9:
        raise SystemExit("backends disagree on the packed volume")
    print(f"{'backend':<8} {'matrix':>10} {'pack':>10} {'oracle x10':>12}")
    for r in results:
        print(f"{r['backend']:<8} {r['matrix_s']:>9.3f}s "
              f"{r['pack_s']:>9.3f}s {r['oracle10_s']:>11.3f}s")
    base, fast = results[1], results[0]
    for key in ("matrix_s", "pack_s", "oracle10_s"):
        speedup = base[key] / fast[key] if fast[key] > 0 else float("inf")
        print(f"speedup {key[:-2]}: {speedup:.1f}x")


if __name__ == "__main__":
    main()
