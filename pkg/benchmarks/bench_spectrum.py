"""Compare the compiled and numpy weight-histogram backends.

    python benchmarks/bench_spectrum.py [--repeat 3] [--workers 1]

Both backends must return identical histograms; the script exits nonzero
otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

from grmkit import kernels
from grmkit.oracle import GridPoint, enum_spectrum, enumeration_cost

CASES = [
    GridPoint(3, 2, 2), GridPoint(4, 2, 3), GridPoint(5, 2, 3), GridPoint(2, 5, 2),
    GridPoint(3, 3, 2), GridPoint(3, 2, 2, "projective"), GridPoint(4, 2, 2, "projective"),
]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    backends = list(kernels.BACKENDS)
    print(f"backends available: {', '.join(backends)} (default {kernels.BACKEND})")
    print(f"{'grid point':<24}{'cost':>14}" + "".join(f"{b + ' s':>12}" for b in backends)
          + ("   speedup" if "cython" in backends else ""))
    status = 0
    for gp in CASES:
        times, results = {}, {}
        for b in backends:
            results[b] = enum_spectrum(gp, workers=args.workers, backend=b).counts
            times[b] = best_of(lambda: enum_spectrum(gp, workers=args.workers, backend=b), args.repeat)
        if len({tuple(sorted(r.items())) for r in results.values()}) != 1:
            print(f"{gp}: backends disagree", file=sys.stderr)
            status = 1
        row = f"{str(gp):<24}{enumeration_cost(gp):>14,}" + "".join(f"{times[b]:>12.4f}" for b in backends)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>10.1f}x"
        print(row)
    return status


if __name__ == "__main__":
    sys.exit(main())
