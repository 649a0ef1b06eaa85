"""Compare the numba and pure-numpy kernel backends.

Run each flavour in a subprocess (the backend is chosen at import time):

    python3 benchmarks/bench_kernels.py            # orchestrates both
    GRAPHSPARSE_BACKEND=python python3 benchmarks/bench_kernels.py --single
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time


def _random_graph(n: int, density: float, rng: random.Random):
    from graphsparse.graph import Graph
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def run_single() -> None:
    from graphsparse import canonical_code
    from graphsparse._kernels import BACKEND
    from graphsparse.patterns import P5_COP5_BULL, sparse_oracle

    rng = random.Random(2024)
    canon_pool = [_random_graph(12, 0.4, rng) for _ in range(200)]
    scan_pool = [_random_graph(24, 0.25, rng) for _ in range(100)]

    # warm-up (jit compilation, table construction)
    canonical_code(canon_pool[0])
    sparse_oracle(scan_pool[0], P5_COP5_BULL)

    t0 = time.perf_counter()
    for g in canon_pool:
        canonical_code(g)
    t_canon = time.perf_counter() - t0

    t0 = time.perf_counter()
    for g in scan_pool:
        sparse_oracle(g, P5_COP5_BULL)
    t_scan = time.perf_counter() - t0

    print(f"backend={BACKEND:>6}  canonical_code x{len(canon_pool)}: "
          f"{t_canon:7.3f}s   violation scan x{len(scan_pool)}: {t_scan:7.3f}s")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--single", action="store_true",
                    help="benchmark only the backend chosen by the environment")
    if ap.parse_args().single:
        run_single()
        return
    for backend in ("numba", "python"):
        env = dict(os.environ, GRAPHSPARSE_BACKEND=backend)
        subprocess.run([sys.executable, __file__, "--single"], env=env,
                       check=True)


if __name__ == "__main__":
    main()
