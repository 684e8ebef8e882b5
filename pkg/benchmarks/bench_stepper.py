"""Benchmark the compiled stepper kernel against the pure-Python fallback.

Both kernels march gamma' = gamma Omega with the same bit-identical
contract, so this compares raw speed only.  Run from the repository root:

    python3 benchmarks/bench_stepper.py [--steps N] [--repeat R]

Prints per-kernel timings for each integration order and the speedup.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

import sl2flow._stepper_py as pure

try:
    import sl2flow._stepper as compiled
except ImportError:
    compiled = None

# a moderately stiff magnetic trajectory: rotation rate omega = 4a - q = 7
CASE = dict(a=1.2, b=0.9, c=-0.4, q=-2.2, h=1e-3)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=10_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    kernels = [("pure python", pure)]
    if compiled is not None:
        kernels.insert(0, ("compiled", compiled))
    else:
        print("compiled extension not importable; timing the fallback only")

    print(f"{args.steps} steps of h={CASE['h']}, best of {args.repeat} runs")
    for order in (2, 4, 6):
        times = {}
        for name, mod in kernels:
            times[name] = best_of(
                lambda m=mod: m.integrate(
                    CASE["a"], CASE["b"], CASE["c"], CASE["q"],
                    CASE["h"], args.steps, order,
                ),
                args.repeat,
            )
        line = f"order {order}:"
        for name, t in times.items():
            line += f"  {name} {1e3 * t:8.3f} ms"
        if compiled is not None:
            line += f"  speedup {times['pure python'] / times['compiled']:6.1f}x"
        print(line)

    if compiled is not None:
        for order in (2, 4, 6):
            got = np.asarray(
                compiled.integrate(
                    CASE["a"], CASE["b"], CASE["c"], CASE["q"],
                    CASE["h"], args.steps, order,
                )
            )
            want = np.asarray(
                pure.integrate(
                    CASE["a"], CASE["b"], CASE["c"], CASE["q"],
                    CASE["h"], args.steps, order,
                )
            )
            assert np.array_equal(got, want), f"kernels disagree at order {order}"
        print("outputs bit-identical across kernels at every order")


if __name__ == "__main__":
    main()
