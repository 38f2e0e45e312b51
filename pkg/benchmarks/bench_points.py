"""Time the numba and numpy point-enumeration backends on the same charts.

    python3 benchmarks/bench_points.py [--repeat 3]
"""

import argparse
import time

from hilbchart import _kernels
from hilbchart.charts import AlgebraPresentation, build_chart
from hilbchart.line import MultiplicativeSetSpec, line_chart
from hilbchart.points import enumerate_semantic, enumerate_symbolic

CASES = [
    ("A[Y1,Y2], n=2, p=5", lambda: build_chart(AlgebraPresentation.polynomial_ring(2), 2), 5),
    ("A[Y1], n=3, p=3", lambda: build_chart(AlgebraPresentation.polynomial_ring(1), 3), 3),
    ("A[X, 1/X], n=2, p=5", lambda: line_chart(MultiplicativeSetSpec.from_strings(["X"]), 2), 5),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = sorted(_kernels.BACKENDS)
    print(f"{'case':24} {'mode':9} " + " ".join(f"{b:>10}" for b in backends) + "   points")
    for name, make, p in CASES:
        chart = make()
        for mode, fn in (("symbolic", enumerate_symbolic), ("semantic", enumerate_semantic)):
            times, counts = [], set()
            for b in backends:
                fn(chart, p, backend=b)  # warm-up (numba compiles on first call)
                t, pts = best_of(lambda: fn(chart, p, backend=b), args.repeat)
                times.append(t)
                counts.add(len(pts))
            assert len(counts) == 1, "backends disagree"
            print(f"{name:24} {mode:9} " + " ".join(f"{t:10.4f}" for t in times) + f"   {counts.pop()}")


if __name__ == "__main__":
    main()
