#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the raw special-function kernels, the fused integrand kernel, and a
full finite-part computation routed through each backend.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import statistics
import time

from koff2d import _backend
from koff2d.model import DimensionlessParams
from koff2d.offrate import finite_part_quadrature
from koff2d.quadrature import QuadratureConfig


def time_call(fn, repeat, number):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def kernel_micro(kern, repeat):
    rows = []
    xs_small = [0.03 * i + 0.01 for i in range(40)]        # series branch
    xs_mid = [6.0 + 0.3 * i for i in range(40)]            # double-double branch
    xs_big = [18.0 + 9.0 * i for i in range(40)]           # asymptotic branch
    for label, xs in (("series", xs_small), ("dd-mid", xs_mid), ("asym", xs_big)):
        for name in ("j0", "y1", "k0"):
            fn = getattr(kern, name)
            if name == "k0" and label == "asym":
                xs = [min(x, 90.0) for x in xs]
            t = time_call(lambda: [fn(x) for x in xs], repeat, 25)
            rows.append(("%s[%s]" % (name, label), t / len(xs)))
    t = time_call(lambda: [kern.f_value(1.0, 1.0, x) for x in xs_mid], repeat, 25)
    rows.append(("f_value[dd-mid]", t / len(xs_mid)))
    return rows


def finite_part_timing(backend, repeat):
    _backend.use(backend)
    cfg = QuadratureConfig()
    params = DimensionlessParams(1.0, 1.0)
    return time_call(lambda: finite_part_quadrature(params, cfg), repeat, 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = _backend.available()
    if "cython" not in backends:
        print("compiled backend unavailable; timing the fallback only")

    micro = {}
    for b in backends:
        kern = _backend.use(b)
        micro[b] = dict(kernel_micro(kern, args.repeat))

    print("\nper-call kernel timings (microseconds)")
    names = list(next(iter(micro.values())).keys())
    hdr = "%-20s" + "%14s" * len(backends)
    print(hdr % (("kernel",) + tuple(backends)))
    for name in names:
        row = [micro[b][name] * 1e6 for b in backends]
        line = "%-20s" % name + "".join("%14.3f" % v for v in row)
        if len(backends) == 2 and row[0] > 0:
            line += "   x%.1f" % (row[1] / row[0])
        print(line)

    print("\nfull finite-part computation (h=1, kappa=1, rel_tol=1e-10)")
    times = {b: finite_part_timing(b, args.repeat) for b in backends}
    for b in backends:
        print("  %-8s %10.3f ms" % (b, times[b] * 1e3))
    if len(backends) == 2:
        print("  speedup  %10.1fx" % (times["python"] / times["cython"]))

    _backend.use(backends[0])


if __name__ == "__main__":
    main()
