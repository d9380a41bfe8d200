#!/usr/bin/env python3
"""Benchmark the compiled numeric core against the pure NumPy fallback.

Times the two hot kernels (SMO solve, CART build) on synthetic workloads
of increasing size, plus one end-to-end CV fold, and prints a comparison
table. Forcing the fallback from the command line is equivalent to
running any sunshade command with SUNSHADE_PURE_PYTHON=1.
"""

import argparse
import time

import numpy as np

from sunshade._core import backend_name, get_backend


def blobs(n, d, sep, seed):
    rng = np.random.default_rng(seed)
    half = n // 2
    X = np.vstack([rng.normal(-sep, 1.0, (half, d)),
                   rng.normal(sep, 1.0, (n - half, d))])
    y = np.array([0] * half + [1] * (n - half), dtype=np.int64)
    return X, y


def time_call(fn, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_smo(backend, X, y, kernel_id, gamma, repeats):
    y_pm = np.where(y > 0, 1.0, -1.0)

    def run():
        return backend.smo_solve(X, y_pm, 1.0, kernel_id, gamma, 0.0,
                                 3.0, 1e-3, 10000)

    best, (_, _, iters, converged) = time_call(run, repeats)
    return best, iters, converged


def bench_tree(backend, X, y, max_features, repeats):
    def run():
        return backend.build_tree(X, y, max_features, 2, 12345)

    best, arrays = time_call(run, repeats)
    return best, len(arrays[0])


def bench_cv_fold(sizes, repeats):
    """End-to-end: one balanced standardize+train+predict RBF fold."""
    from sunshade.classifiers import ClassifierSpec, ClassifierMethod, \
        train
    from sunshade.features import standardize_apply, standardize_fit
    rows = []
    for n in sizes:
        X, y = blobs(n, 15, 0.9, seed=1)
        X_test, y_test = blobs(n // 3, 15, 0.9, seed=2)
        stats = standardize_fit(X)

        def run():
            model = train(
                ClassifierSpec(method=ClassifierMethod.SVM_RBF, seed=3),
                standardize_apply(X, stats), y)
            return (model.predict(standardize_apply(X_test, stats))
                    == y_test).mean()

        best, acc = time_call(run, repeats)
        rows.append((n, best, acc))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2000,8000")
    ap.add_argument("--repeats", type=int, default=2)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"active backend: {backend_name()}")
    backends = [("pure", get_backend("pure"))]
    try:
        backends.append(("cython", get_backend("cython")))
    except RuntimeError:
        print("compiled backend not built; benchmarking the fallback "
              "only")

    print(f"\n{'kernel':28s} {'n':>7s} " + "".join(
        f"{name + ' (s)':>12s}" for name, _ in backends) + "  speedup")
    for n in sizes:
        X, y = blobs(n, 15, 0.45, seed=1)
        for label, kernel_id, gamma in (("smo rbf", 2, 1.0 / 15.0),
                                        ("smo linear", 0, 0.0)):
            times = []
            for _, backend in backends:
                best, iters, conv = bench_smo(backend, X, y, kernel_id,
                                              gamma, args.repeats)
                times.append(best)
            speedup = times[0] / times[-1] if len(times) > 1 else 1.0
            print(f"{label:28s} {n:7d} "
                  + "".join(f"{t:12.3f}" for t in times)
                  + f"  {speedup:6.1f}x")
        for label, mf in (("cart full features", 0),
                          ("cart sqrt features", 3)):
            times = []
            for _, backend in backends:
                best, nodes = bench_tree(backend, X, y, mf, args.repeats)
                times.append(best)
            speedup = times[0] / times[-1] if len(times) > 1 else 1.0
            print(f"{label:28s} {n:7d} "
                  + "".join(f"{t:12.3f}" for t in times)
                  + f"  {speedup:6.1f}x")

    print("\nend-to-end svm-rbf fold (train+predict), active backend:")
    for n, best, acc in bench_cv_fold(sizes, args.repeats):
        print(f"  n={n:6d}  {best:8.3f}s  held-out accuracy {acc:.3f}")


if __name__ == "__main__":
    main()
