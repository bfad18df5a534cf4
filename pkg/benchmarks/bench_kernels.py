#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends.

Times the three hot kernels (row reduction, structure-constant pair products,
modular matmul) on synthetic data, plus an end-to-end ideal-monoid closure.
Run from a clean interpreter; the backend used by the closure benchmark is
whatever QUIVERFOLD_BACKEND selected at import time.
"""

import argparse
import statistics
import time

import numpy as np

from quiverfold._kernels import active_backend, get_backend


def time_call(fn, *args, reps=7, warmup=2):
    for _ in range(warmup):
        fn(*args)
    samples = []
    for _ in range(reps):
        start = time.perf_counter()
        fn(*args)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def bench_kernels(sizes, p, reps):
    numpy_b = get_backend("numpy")
    numba_b = get_backend("numba")
    rng = np.random.default_rng(0)
    print(f"prime p = {p}")
    header = f"{'kernel':<16}{'n':>6}{'numpy (ms)':>14}{'numba (ms)':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        mat = rng.integers(0, p, size=(4 * n, n), dtype=np.int64)
        t_np = time_call(numpy_b.rref_mod, mat, p, reps=reps)
        t_nb = time_call(numba_b.rref_mod, mat, p, reps=reps)
        print(f"{'rref':<16}{n:>6}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>10.2f}")

        table = rng.integers(0, p, size=(n, n, n), dtype=np.int64)
        x = rng.integers(0, p, size=(n, n), dtype=np.int64)
        y = rng.integers(0, p, size=(n, n), dtype=np.int64)
        t_np = time_call(numpy_b.pair_products_mod, x, y, table, p, reps=reps)
        t_nb = time_call(numba_b.pair_products_mod, x, y, table, p, reps=reps)
        print(
            f"{'pair_products':<16}{n:>6}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>10.2f}"
        )

        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        b = rng.integers(0, p, size=(n, n), dtype=np.int64)
        t_np = time_call(numpy_b.matmul_mod, a, b, p, reps=reps)
        t_nb = time_call(numba_b.matmul_mod, a, b, p, reps=reps)
        print(f"{'matmul':<16}{n:>6}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>10.2f}")


def bench_closure(reps):
    from quiverfold.engine import normal_form_engine
    from quiverfold.ideals import monoid_closure, vertex_ideal
    from quiverfold.linalg import PrimeField
    from quiverfold.presentations import preprojective_presentation
    from quiverfold.quiver import make_quiver

    d4 = make_quiver(
        ["c", "1", "2", "3"], [("a1", "1", "c"), ("a2", "2", "c"), ("a3", "3", "c")]
    )
    alg = normal_form_engine(preprojective_presentation(d4, PrimeField(3)))

    def closure():
        gens = [(v, vertex_ideal(alg, v)) for v in d4.vertices]
        return monoid_closure(alg, gens)

    t = time_call(closure, reps=reps, warmup=1)
    print(
        f"\nmonoid closure on the 28-dim algebra (192 ideals, full table) "
        f"[{active_backend()} backend]: {t:.3f}s"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    parser.add_argument("--prime", type=int, default=3)
    parser.add_argument("--reps", type=int, default=7)
    parser.add_argument("--skip-closure", action="store_true")
    args = parser.parse_args()
    bench_kernels(args.sizes, args.prime, args.reps)
    if not args.skip_closure:
        bench_closure(max(3, args.reps // 2))


if __name__ == "__main__":
    main()
