#!/usr/bin/env python3
"""Determine the slope at origin from vanishing Hankel determinants.

Each Hankel determinant of the series coefficients is an exact polynomial
in the free half-slope; the physical slope is the common limit of one root
tracked across increasing matrix dimension.  This script shows the exact
determinants at small dimension, then follows the root sequence and prints
how many digits settle at each step.
"""

import time

from mpmath import mp

from hankelpade import HankelSpec, det_exact, root_sequence, symbolic_coeffs

REFERENCE = "-1.58807102261137531"  # published 18-digit slope


def main():
    print("=" * 64)
    print("Exact Hankel determinants, displacement 3")
    print("=" * 64)
    sym = symbolic_coeffs(10)
    for dim in (1, 2):
        det = det_exact(sym, HankelSpec(dim, 3))
        print(f"  D={dim}: degree {det.degree}, coefficients "
              f"{[str(c) for c in det.coeffs]}")

    print()
    print("=" * 64)
    print("Root sequence (displacement 3) up to dimension 14")
    print("=" * 64)
    started = time.time()
    seq = root_sequence(3, 14)
    elapsed = time.time() - started
    mp.dps = 25
    print(f"  {'D':>3} {'2 * root (the slope estimate)':>32} {'delta':>12}")
    for rec in seq.records:
        with mp.workdps(rec.precision_used):
            two = 2 * rec.root
        delta = mp.nstr(rec.delta, 3) if rec.delta is not None else "-"
        print(f"  {rec.D:>3} {mp.nstr(two, 22):>32} {delta:>12}")
    print(f"\n  reference value: {REFERENCE}")
    print(f"  computed in {elapsed:.1f}s; roughly 0.7 digits settle per "
          f"dimension")


if __name__ == "__main__":
    main()
