"""Time the numba kernels against their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py [--repeat R]``. Each kernel is
called once per backend before timing so JIT compilation is excluded, and the
two backends are checked to return identical arrays.
"""
import argparse
import time

import numpy as np

from zetacode import _accel, kernels
from zetacode.graph import complete_graph, hashimoto_matrix, successor_lists


def workloads():
    B = hashimoto_matrix(complete_graph(5))
    ptr, succ = successor_lists(B)
    H = np.random.default_rng(0).integers(0, 2, size=(8, 18))
    return {
        "uniforms (10^6 draws)": (kernels.uniforms, (7, 3, 1_000_000)),
        "er_census (N=30, 2000 graphs)": (kernels.er_census, (5, np.arange(2000), 30, 0.1)),
        "codeword_masks (18 bits)": (kernels.codeword_masks, (H,)),
        "prime_walks (K5, length 8)": (kernels.prime_walks, (ptr, succ, B.astype(bool), 8, True)),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':32s} {'numba [s]':>11s} {'numpy [s]':>11s} {'speedup':>8s}")
    for name, (fn, fargs) in workloads().items():
        timings, outputs = {}, {}
        for backend in ("numba", "numpy"):
            with _accel.use_backend(backend):
                outputs[backend] = fn(*fargs)
                timings[backend] = best_time(fn, fargs, args.repeat)
        if not _same(outputs["numba"], outputs["numpy"]):
            raise SystemExit(f"{name}: backends disagree")
        nb, npy = timings["numba"], timings["numpy"]
        print(f"{name:32s} {nb:11.4f} {npy:11.4f} {npy / nb:7.1f}x")


if __name__ == "__main__":
    main()
