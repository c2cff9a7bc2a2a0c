"""Compare the numba and numpy scan backends on the exhaustive spark search.

Runs the benchmark family and a batch of seeded random instances through
both backends, checks they agree, and prints per-instance and total
timings. Invoke as: python3 benchmarks/bench_backends.py
"""

from __future__ import annotations

import time

from sparkcert import exact_spark, random_matrix, spiked_identity
from sparkcert.kernels import HAVE_NUMBA, warm_up


def run_case(name, matrix, backend):
    start = time.perf_counter()
    result = exact_spark(matrix, backend=backend)
    elapsed = time.perf_counter() - start
    shown = result.spark.value if result.spark.is_finite else "infinity"
    print(
        f"  {name:<24} backend={backend:<5} spark={shown!s:<9} "
        f"subsets={result.subsets_examined:<8} time={elapsed:8.3f}s"
    )
    return result, elapsed


def main():
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    if not HAVE_NUMBA:
        print("numba not importable; timing the numpy backend only")
    cases = [(f"spiked-identity n={n}", spiked_identity(n)) for n in (10, 14, 17)]
    cases += [
        (f"random 4x24 seed={seed}", random_matrix(4, 24, seed=seed))
        for seed in range(3)
    ]
    totals = {b: 0.0 for b in backends}
    results = {}
    for backend in backends:
        warm_up(backend)
        print(f"backend: {backend}")
        for name, matrix in cases:
            result, elapsed = run_case(name, matrix, backend)
            totals[backend] += elapsed
            previous = results.setdefault(name, result)
            if previous != result:
                raise SystemExit(f"backend mismatch on {name}: {previous} vs {result}")
    print()
    for backend in backends:
        print(f"total {backend:<5} {totals[backend]:8.3f}s")
    if len(backends) == 2 and totals["numba"] > 0:
        print(f"numpy/numba ratio: {totals['numpy'] / totals['numba']:.2f}x")


if __name__ == "__main__":
    main()
