"""Time the compiled transport kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

import argparse
import time

import numpy as np

from projstruct import _kernels_py
from projstruct.schwarzian import Loop, loop_nodes, triangle_differential

try:
    from projstruct import _kernels
except ImportError:
    _kernels = None


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    U0 = np.array([[1, 0, 1], [0, 1, 1]], dtype=complex)
    qd = triangle_differential(1 / 3, 1 / 3, 1 / 3)
    nodes = loop_nodes(Loop.AROUND_0, steps=args.steps)
    Y0 = np.eye(2, dtype=complex)
    cases = {
        "riccati_circle": lambda m: m.riccati_circle(0.3 + 0.2j, 1 + 0j, 2, 0.5, 0.0, args.steps, U0),
        "fuchsian_path": lambda m: m.fuchsian_path(*qd.coefficients, nodes, Y0),
    }
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    print(f"steps={args.steps} repeat={args.repeat}")
    for name, case in cases.items():
        times = {}
        outs = {}
        for label, mod in backends:
            times[label], outs[label] = _best(lambda: case(mod), args.repeat)
            print(f"{name:16s} {label:7s} {times[label] * 1e3:10.2f} ms")
        if "cython" in times:
            diff = np.abs(outs["cython"] - outs["python"]).max()
            print(f"{name:16s} speedup {times['python'] / times['cython']:8.1f}x  max|diff| {diff:.2e}")
    if _kernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
