#!/usr/bin/env python3
"""Benchmark the compiled series kernel against the pure-Python fallback.

Times the three hot operations on identical inputs:

  mul      truncated Cauchy product of two dense rational-numerator series
  invert   series reciprocal by the division-free integer recurrence
  product  Euler-style infinite product (1-q)(1-q^2)... via in-place updates

Run:  python benchmarks/bench_kernel.py [--order 600] [--repeats 5]
"""

import argparse
import json
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from locq.kernel import available_backends  # noqa: E402


def bench_backend(mod, order: int, repeats: int) -> dict:
    rng = random.Random(42)
    a = [rng.randint(-99, 99) for _ in range(order + 1)]
    b = [rng.randint(-99, 99) for _ in range(order + 1)]
    inv_input = [1] + [rng.randint(-9, 9) for _ in range(order)]

    def time_op(fn):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        return best

    def euler_product():
        nums = [0] * (order + 1)
        nums[0] = 1
        for e in range(1, order + 1):
            mod.mul_binomial_inplace(nums, e, -1)
        return nums

    return {
        "mul": time_op(lambda: mod.mul_trunc(a, b)),
        "invert": time_op(lambda: mod.invert_ints(inv_input)),
        "product": time_op(euler_product),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--order", type=int, default=600)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    report = {
        "order": args.order,
        "repeats": args.repeats,
        "backends": {},
    }
    for name, mod in backends.items():
        report["backends"][name] = bench_backend(mod, args.order, args.repeats)
    if {"python", "cython"} <= backends.keys():
        report["speedup_cython_over_python"] = {
            op: report["backends"]["python"][op] / report["backends"]["cython"][op]
            for op in ("mul", "invert", "product")
        }
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
