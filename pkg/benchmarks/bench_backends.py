#!/usr/bin/env python3
"""Time the compiled sifting kernels against the pure-NumPy fallback.

Runs the two hot kernels (extrema scan, natural-spline envelope) and the
whole decomposition on white noise and a random walk, for each available
backend, and prints per-call times plus the speedup.

    python3 benchmarks/bench_backends.py --lengths 2048 10000 --repeats 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hhtscale import decompose
from hhtscale._kernels import available_backends, get_backend
from hhtscale.emd import EmdConfig


def best_of(repeats: int, fn, *args) -> float:
    """Best wall time of ``repeats`` calls, in seconds."""
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(backend_name: str, length: int, repeats: int) -> dict:
    backend = get_backend(backend_name)
    rng = np.random.default_rng(0)
    x = np.cumsum(rng.standard_normal(length))
    max_pos, max_val, _, _ = backend.find_extrema(x)
    return {
        "find_extrema": best_of(repeats, backend.find_extrema, x),
        "spline_eval": best_of(
            repeats, backend.spline_eval, max_pos.astype(np.float64), max_val, length
        ),
    }


def bench_decompose(backend_name: str, length: int, repeats: int) -> float:
    rng = np.random.default_rng(1)
    x = rng.standard_normal(length)
    backend = get_backend(backend_name)
    return best_of(repeats, decompose, x, EmdConfig(), backend)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lengths", type=int, nargs="+", default=[2048, 10_000])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    if len(backends) < 2:
        print("(compiled extension not built; timing the fallback only)")

    for length in args.lengths:
        print(f"\nlength = {length}")
        rows = {}
        for name in backends:
            kernels = bench_kernels(name, length, args.repeats)
            kernels["decompose"] = bench_decompose(name, length, args.repeats)
            rows[name] = kernels
        for op in ("find_extrema", "spline_eval", "decompose"):
            line = f"  {op:13s}"
            for name in backends:
                line += f"  {name}: {rows[name][op] * 1e3:8.3f} ms"
            if len(backends) == 2 and rows[backends[0]][op] > 0:
                ratio = rows[backends[1]][op] / rows[backends[0]][op]
                faster = backends[0] if ratio > 1 else backends[1]
                line += f"  ({faster} {max(ratio, 1 / ratio):4.1f}x faster)"
            print(line)


if __name__ == "__main__":
    main()
