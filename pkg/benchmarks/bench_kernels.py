"""Timing of the numba and pure-numpy kernels on identical inputs.

Usage: python benchmarks/bench_kernels.py [--sizes 50,100,200,400] [--repeat 3]
"""

import argparse
import time

import numpy as np

from polytf import _kernels, legendre


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = sorted(_kernels.KERNELS)
    if "numba" not in backends:
        print("numba not installed; timing the numpy kernels only")
    src = legendre()
    # compile once so that the JIT cost is not part of any timing
    for name in backends:
        _kernels.tql(np.zeros(3), np.ones(2), backend=name)
        _kernels.recurrence_values(np.zeros(2), np.ones(3), 1.0, np.zeros(2), backend=name)

    print(f"{'kernel':<12}{'size':>6}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in sizes:
        a, b = src.arrays(n + 1)
        x = np.linspace(-1, 1, 1000)
        cases = {
            "tql+vectors": lambda name: _kernels.tql(a[:n], b[1:n], True, backend=name),
            "tql values": lambda name: _kernels.tql(a[:n], b[1:n], False, backend=name),
            "recurrence": lambda name: _kernels.recurrence_values(a[:n], b, 1 / b[0], x, backend=name),
        }
        for label, run in cases.items():
            t = {name: best_of(lambda: run(name), args.repeat) for name in backends}
            ratio = t["numpy"] / t["numba"] if "numba" in t else float("nan")
            print(f"{label:<12}{n:>6}" + "".join(f"{t[k]:>11.4f}s" for k in backends) + f"{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
