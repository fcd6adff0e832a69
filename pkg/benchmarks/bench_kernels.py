"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--scale 1.0]

Each workload runs once per backend; outputs are checked for equality.
"""

import argparse
import time

import numpy as np

from wreathwalk import kernels
from wreathwalk.groups import make_cyclic, make_symmetric
from wreathwalk.walk import build_warp_measure


def workloads(scale):
    z2 = make_cyclic(2)
    trials = max(1, int(2000 * scale))
    yield (
        f"walk_fixed_points n=100 k=922 trials={trials}",
        lambda b: b.walk_fixed_points(100, z2.mul, z2.inv, 0, [230, 461, 922], trials, 1),
    )
    coupons = max(1, int(5000 * scale))
    yield f"twisted_coupons n=50 trials={coupons}", lambda b: b.twisted_coupons(50, coupons, 1)
    g = make_symmetric(3)
    m = build_warp_measure(4, g)
    colors = np.array([x.colors for x in m.elements], dtype=np.int64)
    perms = np.array([[p - 1 for p in x.perm] for x in m.elements], dtype=np.int64)
    yield (
        "build_right_mul_maps n=4 G=S3 (31104 states)",
        lambda b: b.build_right_mul_maps(4, g.order, g.mul, colors, perms),
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=float, default=1.0, help="multiply trial counts")
    args = ap.parse_args()
    backends = kernels.backends()
    print(f"selected backend: {kernels.BACKEND}; available: {', '.join(backends)}")
    for name, fn in workloads(args.scale):
        times, outs = {}, {}
        for bname, b in backends.items():
            t0 = time.perf_counter()
            outs[bname] = fn(b)
            times[bname] = time.perf_counter() - t0
        same = all(np.array_equal(outs["python"], o) for o in outs.values())
        cells = "  ".join(f"{b}={t:8.3f}s" for b, t in times.items())
        speed = f"  speedup={times['python'] / times['cython']:.0f}x" if "cython" in times else ""
        print(f"{name:<48} {cells}{speed}  identical={same}")


if __name__ == "__main__":
    main()
