#!/usr/bin/env python3
"""Walk through the series expansion that underlies everything else.

The transformed Thomas-Fermi equation fixes every Taylor coefficient of
f(t) = sqrt(u(t^2)) except one: the n = 2 coefficient (half the slope at
origin) drops out of the recurrence because its denominator n*(n-2)
vanishes.  This script prints the exact coefficients as polynomials in that
free parameter, checks the degree pattern, and shows how the truncation
residual collapses near the origin.
"""

from fractions import Fraction

from mpmath import mp, mpf

from hankelpade import numeric_coeffs, residual_check, symbolic_coeffs


def pretty(poly):
    if poly.is_zero:
        return "0"
    terms = []
    for k, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(f"{c}*s" if c != 1 else "s")
        else:
            terms.append(f"{c}*s^{k}" if c != 1 else f"s^{k}")
    return " + ".join(terms).replace("+ -", "- ")


def main():
    print("=" * 64)
    print("Exact series coefficients (s = the free half-slope)")
    print("=" * 64)
    sym = symbolic_coeffs(12)
    for j, p in enumerate(sym.coeffs):
        print(f"  f_{j:<2} = {pretty(p)}")

    print()
    print("Degree never exceeds floor(j/2):",
          all(p.degree <= j // 2 for j, p in enumerate(sym.coeffs)))

    print()
    print("=" * 64)
    print("Truncation residual of the transformed equation")
    print("=" * 64)
    series = numeric_coeffs(10, mpf("-0.794"), 30)
    mp.dps = 15
    print("  order 10 truncation, slope -0.794:")
    for t in ("0.05", "0.1", "0.2", "0.4"):
        r = residual_check(series, mpf(t))
        print(f"    t = {t:>4}:  T(f, t) = {mp.nstr(r, 6)}")
    print("  (each doubling of t multiplies the residual by ~2^10 = 1024)")


if __name__ == "__main__":
    main()
