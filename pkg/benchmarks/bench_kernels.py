"""Compare the compiled and numpy RREF kernels on random dense matrices.

    python benchmarks/bench_kernels.py --sizes 100 200 400 --prime 7
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from modcartan.exactfield.kernels import available_backends, rref_inplace


def bench(n: int, p: int, backend: str, repeats: int) -> tuple[float, int]:
    rng = np.random.default_rng(n)
    base = rng.integers(0, p, (n, n), dtype=np.int64)
    base[n // 2 :] = (base[: n - n // 2] * 2) % p
    best = float("inf")
    piv = None
    for _ in range(repeats):
        A = base.copy()
        t0 = time.perf_counter()
        piv = rref_inplace(A, p, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, len(piv)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--prime", type=int, default=7)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    print(f"{'n':>6} " + " ".join(f"{b:>12}" for b in backends) + "   rank")
    for n in args.sizes:
        times, ranks = [], set()
        for b in backends:
            t, r = bench(n, args.prime, b, args.repeats)
            times.append(t)
            ranks.add(r)
        assert len(ranks) == 1, "backends disagree on rank"
        print(f"{n:>6} " + " ".join(f"{t * 1e3:>10.1f}ms" for t in times) + f"   {ranks.pop()}")


if __name__ == "__main__":
    main()
