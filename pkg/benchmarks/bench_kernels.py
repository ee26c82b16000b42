#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the two operations that dominate training (batch forward and batch
backward) across batch sizes, plus a full training run with each backend.
"""
import time

import numpy as np

from acceptance_engine import _kernels_np, paper_model, training

try:
    from acceptance_engine import _kernels_cy
except ImportError:
    _kernels_cy = None


def time_call(fn, *args, repeats=200):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(spec):
    backends = [("numpy", _kernels_np)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    print(f"{'op':<10} {'batch':>7} " + "".join(f"{name:>12}" for name, _ in backends))
    rng = np.random.default_rng(0)
    for n in (1, 100, 1000, 10000):
        x = np.ascontiguousarray(rng.uniform(0.0, 1.0, (n, 6)))
        t = np.ascontiguousarray(rng.normal(0.0, 1.0, n))
        row_f, row_b = [], []
        for _, backend in backends:
            row_f.append(time_call(
                backend.batch_forward, spec.w_in, spec.b_hidden, spec.w_out,
                spec.b_out, x, False, repeats=50,
            ))
            row_b.append(time_call(
                backend.batch_backward, spec.w_in, spec.b_hidden, spec.w_out,
                spec.b_out, x, t, False, repeats=50,
            ))
        print(f"{'forward':<10} {n:>7} " + "".join(f"{v * 1e6:>10.1f}us" for v in row_f))
        print(f"{'backward':<10} {n:>7} " + "".join(f"{v * 1e6:>10.1f}us" for v in row_b))


def bench_training(spec):
    # full 5000-epoch training run through whichever backend kernels.py chose
    from acceptance_engine import kernels

    dataset = training.generate_synthetic(spec, 1000, seed=42)
    config = training.TrainingConfig(seed=42)
    t0 = time.perf_counter()
    training.train(dataset, config)
    elapsed = time.perf_counter() - t0
    print(f"\nfull training run (backend={kernels.BACKEND}): {elapsed:.2f}s")


if __name__ == "__main__":
    spec = paper_model.load_paper_weights()
    if _kernels_cy is None:
        print("note: compiled extension not built, benchmarking numpy only\n")
    bench_kernels(spec)
    bench_training(spec)
