#!/usr/bin/env python3
"""Locate the schoolbook/Karatsuba crossover for IntPolynomial.multiply.

The shipped cutoff (goldpoly.poly.KARATSUBA_CUTOFF) was chosen with this
script; rerun it when moving to a different interpreter or host.

Usage: python scripts/bench_karatsuba.py [--coeff-bits 10 30 100]
"""

import argparse
import time

import numpy as np

from goldpoly import poly
from goldpoly.poly import IntPolynomial, multiply


def time_mul(a, b, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        multiply(a, b)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--coeff-bits", type=int, nargs="+", default=[10, 30, 100])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[8, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512])
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    saved_cutoff = poly.KARATSUBA_CUTOFF
    print(f"current cutoff: {saved_cutoff}")
    print(f"{'size':>6} {'bits':>6} {'school(ms)':>12} {'kara(ms)':>12} {'kara/school':>12}")
    try:
        for bits in args.coeff_bits:
            bound = 1 << bits
            for n in args.sizes:
                coeffs = lambda: [int(x) for x in
                                  rng.integers(-bound, bound, n, dtype=np.int64)
                                  ] if bits < 62 else [
                                      int(rng.integers(-(1 << 62), 1 << 62)) << (bits - 62)
                                      for _ in range(n)]
                a = IntPolynomial(coeffs())
                b = IntPolynomial(coeffs())
                poly.KARATSUBA_CUTOFF = 10 ** 9          # force schoolbook
                t_school = time_mul(a, b)
                poly.KARATSUBA_CUTOFF = 8                # force karatsuba
                t_kara = time_mul(a, b)
                print(f"{n:>6} {bits:>6} {1e3 * t_school:>12.3f} "
                      f"{1e3 * t_kara:>12.3f} {t_kara / t_school:>12.2f}")
    finally:
        poly.KARATSUBA_CUTOFF = saved_cutoff


if __name__ == "__main__":
    main()
