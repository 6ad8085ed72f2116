#!/usr/bin/env python3
"""Reconstruct the Thomas-Fermi function from a [5/8] approximant.

With the converged slope in hand, a rational approximant with denominator
degree three above the numerator gives u(x) = f(sqrt(x))^2 the correct
x^-3 falloff.  This script builds the approximant and prints u and -u'
over four decades, plus the decay product u * x^3 far out.
"""

from mpmath import mp, mpf

from hankelpade import numeric_coeffs, pade_construct, tf_eval, to_bigfloat

# converged half-slope (25 digits; see demos/02 for how it is computed)
SLOPE = "-0.7940355113056876562033246"

XS = ["0", "1", "5", "10", "20", "30", "40", "50", "60", "70", "80", "90",
      "100", "1000"]


def main():
    series = numeric_coeffs(13, to_bigfloat(SLOPE, 60), 60)
    approx = pade_construct(series, 5, 8)
    with mp.workdps(60):
        print("[5/8] approximant at 2*f2 =", mp.nstr(2 * approx.slope, 19))
    print()
    print(f"  {'x':>6}  {'u(x)':>14}  {'-du/dx':>14}")
    for x_s in XS:
        ev = tf_eval(approx, to_bigfloat(x_s, 60))
        with mp.workdps(20):
            print(f"  {x_s:>6}  {mp.nstr(ev.u, 7):>14}  "
                  f"{mp.nstr(-ev.uprime, 7):>14}")

    print()
    for exp in (4, 6, 8):
        x = mpf(10) ** exp
        ev = tf_eval(approx, x)
        with mp.workdps(30):
            print(f"  u(10^{exp}) * x^3 = {mp.nstr(ev.u * x**3, 8)}"
                  f"   (finite, positive: correct decay exponent)")


if __name__ == "__main__":
    main()
