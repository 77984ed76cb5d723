"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the two hot kernels (submodule lattice enumeration and the strongly
prime witness scan) over a few representative modules with both backends
and prints a comparison table.  Usage:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import spm
from spm.kernels import numpy_backend

try:
    from spm.kernels import numba_backend
except ImportError:
    numba_backend = None


def cases():
    z4 = spm.make_zmod(4)
    gr = spm.make_poly_quotient(spm.make_zmod(4), [1, 1, 1])
    yield "Z/4^3", spm.make_free(z4, 3)
    yield "Z/8^2", spm.make_free(spm.make_zmod(8), 2)
    yield "Z/6^2", spm.make_free(spm.make_zmod(6), 2)
    yield "GR(4,2)^1", spm.make_free(gr, 1)
    yield "Z/16^2", spm.make_free(spm.make_zmod(16), 2)


def time_lattice(backend, M, repeat):
    best = float("inf")
    count = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        subs = backend.enumerate_lattice(M.addm, M.smul, M.zero_index, 10**6)
        best = min(best, time.perf_counter() - t0)
        count = len(subs)
    return best, count


def time_witness(backend, M, repeat):
    # scan every proper submodule, exactly as the predicate layer does
    subs = numpy_backend.enumerate_lattice(M.addm, M.smul, M.zero_index, 10**6)
    prepared = []
    for elems in subs:
        if elems.size == M.order:
            continue
        mask = np.zeros(M.order, dtype=bool)
        mask[elems] = True
        xreps = numpy_backend.coset_min_reps(M.addm, elems)
        prepared.append((elems, mask, xreps[~mask[xreps]]))
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for elems, mask, xreps in prepared:
            backend.strongly_prime_witness(M.addm, M.smul, M.basis, elems, mask, xreps)
        best = min(best, time.perf_counter() - t0)
    return best, len(prepared)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions (best-of)")
    args = ap.parse_args()

    if numba_backend is None:
        print("numba is not installed; only the numpy backend will be timed")
    else:
        # trigger JIT compilation outside the timed region
        warm = spm.make_free(spm.make_zmod(4), 1)
        time_lattice(numba_backend, warm, 1)
        time_witness(numba_backend, warm, 1)

    header = f"{'kernel':<18} {'module':<10} {'n':>6} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, M in cases():
        for name, timer in (("lattice", time_lattice), ("sp-witness", time_witness)):
            t_np, n = timer(numpy_backend, M, args.repeat)
            if numba_backend is None:
                print(f"{name:<18} {label:<10} {n:>6} {t_np * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
                continue
            t_nb, n2 = timer(numba_backend, M, args.repeat)
            assert n == n2, "backends disagree on result size"
            print(
                f"{name:<18} {label:<10} {n:>6} {t_np * 1e3:>8.1f}ms "
                f"{t_nb * 1e3:>8.1f}ms {t_np / t_nb:>7.1f}x"
            )


if __name__ == "__main__":
    main()
