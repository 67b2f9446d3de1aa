"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--skip-spin]

Prints one row per workload with the best wall time for each backend.
"""
import argparse
import time

import numpy as np

from fanosym import kernels, spinmolien


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(skip_spin: bool):
    rng = np.random.default_rng(0)
    a = rng.integers(-3, 4, size=(20000, 8, 8), dtype=np.int64)
    b = rng.integers(-3, 4, size=(20000, 8, 8), dtype=np.int64)
    ad = rng.integers(1, 5, size=20000, dtype=np.int64)
    bd = rng.integers(1, 5, size=20000, dtype=np.int64)
    yield "mul_canon 20000x8x8", lambda be: kernels.mul_canon(a, ad, b, bd, backend=be)
    c = rng.integers(-2, 3, size=(5000, 8, 8), dtype=np.int64)
    yield "charpoly_batch 5000x8x8", lambda be: kernels.charpoly_batch(c, backend=be)
    if not skip_spin:
        gens = spinmolien.clifford_even_generators(8)
        yield "close 2.A_8 (40320)", lambda be: spinmolien.close_group(gens, backend=be)
        G = spinmolien.spin_group(8)
        yield "molien 2.A_8 cap 12", lambda be: spinmolien.molien_series(G, 12, method="charpoly", backend=be)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-spin", action="store_true")
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if kernels._compiled is not None else [])
    print(f"default backend: {kernels.BACKEND}")
    print(f"{'workload':<26}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in workloads(args.skip_spin):
        ts = [best_of(lambda: fn(be), args.repeat) for be in backends]
        row = f"{name:<26}" + "".join(f"{t:>11.3f}s" for t in ts)
        if len(ts) == 2:
            row += f"{ts[0] / ts[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
