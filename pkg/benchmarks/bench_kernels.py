#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run after building the extension:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from anpolar import _backend


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    try:
        impls = [("c", _backend.get_impl("c")), ("py", _backend.get_impl("py"))]
    except ImportError:
        print("compiled kernels not built; run pip install -e . first")
        return 1

    rng = np.random.default_rng(0)
    print(f"{'kernel':<34}{'c':>12}{'py':>12}{'speedup':>10}")

    cases = [
        ("sc_decode (batch 2, N=4096)", 2, 4096, 5),
        ("sc_decode (batch 16, N=2048)", 16, 2048, 5),
        ("sc_decode (batch 256, N=256)", 256, 256, 5),
    ]
    for label, batch, size, repeats in cases:
        llrs = rng.normal(0.9, 1.5, (batch, size))
        mask = (rng.random(size) < 0.45).astype(np.uint8)
        vals = np.zeros(size, dtype=np.uint8)
        times = {
            name: timeit(lambda impl=impl: impl.sc_decode_batch(llrs, mask, vals), repeats)
            for name, impl in impls
        }
        print(f"{label:<34}{times['c']:>11.4f}s{times['py']:>11.4f}s{times['py']/times['c']:>9.1f}x")

    bits = rng.integers(0, 2, (64, 4096)).astype(np.uint8)
    times = {
        name: timeit(lambda impl=impl: impl.polar_transform_batch(bits), 5)
        for name, impl in impls
    }
    label = "polar_transform (batch 64, N=4096)"
    print(f"{label:<34}{times['c']:>11.4f}s{times['py']:>11.4f}s{times['py']/times['c']:>9.1f}x")

    llrs = rng.normal(2.0, 2.0, (2048, 2048))
    times = {
        name: timeit(lambda impl=impl: impl.genie_llr_negative_counts(llrs), 3)
        for name, impl in impls
    }
    label = "genie sweep (2048 samples, N=2048)"
    print(f"{label:<34}{times['c']:>11.4f}s{times['py']:>11.4f}s{times['py']/times['c']:>9.1f}x")

    # equivalence spot-check on the benchmark inputs
    c_impl = dict(impls)["c"]
    py_impl = dict(impls)["py"]
    mask = (rng.random(1024) < 0.4).astype(np.uint8)
    sample = rng.normal(0.5, 1.2, (8, 1024))
    same = np.array_equal(
        c_impl.sc_decode_batch(sample, mask, np.zeros(1024, np.uint8)),
        py_impl.sc_decode_batch(sample, mask, np.zeros(1024, np.uint8)),
    )
    print(f"\nbackends agree on decisions: {same}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
