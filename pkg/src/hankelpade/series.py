"""Taylor coefficients of the transformed Thomas-Fermi solution.

The Thomas-Fermi boundary-value problem

    u''(x) = sqrt(u(x)^3 / x),   u(0) = 1,   u(inf) = 0

becomes, under the substitution t = sqrt(x), f(t) = sqrt(u(t^2)), the
polynomial-nonlinear equation

    T(f, t) = t * (f*f'' + f'^2) - f*f' - 2*t^2*f^3 = 0.

Expanding f(t) = sum_j f_j t^j about t = 0 and collecting the coefficient of
t^(n-1) of T gives, after solving for the highest coefficient,

    f_n = ( 2*(f^3)_{n-3} - sum_{j+k=n, k<n} k*(k+j-2) * f_j * f_k )
          / ( n*(n-2) ),        n >= 3,

where (f^3)_m is the m-th coefficient of the series cube.  The boundary
values at the origin pin f_0 = 1 and f_1 = 0, while n = 2 is excluded by the
zero denominator: f_2 = u'(0)/2 stays free, and everything downstream of
this module exists to determine it.  The first coefficients are

    f_0 = 1,  f_1 = 0,  f_3 = 2/3,  f_4 = -f_2^2/2,  f_5 = -4*f_2/15, ...

The recurrence runs over any commutative ring, so the same code produces the
coefficients both exactly (polynomials in the free half-slope) and in
arbitrary-precision floating point at a fixed slope value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from mpmath import mpc, mpf

from .algebra import (
    GUARD_DIGITS,
    BigFloat,
    SlopePolynomial,
    round_to,
    to_bigfloat,
    workdps,
)
from .errors import InvalidOrderError


def _coeffs_by_recurrence(nmax, one, zero, slope):
    """Coefficients f_0..f_nmax over the ring of ``one``/``zero``/``slope``.

    The series square and cube are extended lazily by plain convolution
    (cube as square times series), so the total cost is O(nmax^2) ring
    multiplications and every value is exact in an exact ring.
    """
    f = [one, zero, slope]
    sq = [one]    # coefficients of f^2, grown as needed
    cube = [one]  # coefficients of f^3

    for n in range(3, nmax + 1):
        m = n - 3
        while len(sq) <= m:
            i = len(sq)
            acc = zero
            for a in range(i + 1):
                acc = acc + f[a] * f[i - a]
            sq.append(acc)
        while len(cube) <= m:
            i = len(cube)
            acc = zero
            for a in range(i + 1):
                acc = acc + sq[a] * f[i - a]
            cube.append(acc)

        pair = zero
        for k in range(1, n):  # the k=0 term carries a factor k and vanishes
            j = n - k
            pair = pair + (k * (k + j - 2)) * (f[j] * f[k])
        f.append((2 * cube[m] - pair) / (n * (n - 2)))
    return f


@dataclass(frozen=True)
class SymbolicSeries:
    """Exact coefficients f_j as polynomials in the free half-slope."""

    nmax: int
    coeffs: Tuple[SlopePolynomial, ...]

    def __getitem__(self, j):
        return self.coeffs[j]


@dataclass(frozen=True)
class NumericSeries:
    """Coefficients f_j evaluated at a fixed slope, at a stated precision."""

    nmax: int
    slope: BigFloat
    precision: int
    coeffs: Tuple[BigFloat, ...]

    def __getitem__(self, j):
        return self.coeffs[j]


def symbolic_coeffs(nmax):
    """Exact series coefficients f_0..f_nmax in the free half-slope.

    Parameters
    ----------
    nmax : int
        Highest coefficient index; must be >= 3.

    Returns
    -------
    SymbolicSeries

    Raises
    ------
    InvalidOrderError
        If nmax < 3.
    """
    if nmax < 3:
        raise InvalidOrderError(f"nmax must be >= 3, got {nmax}")
    coeffs = _coeffs_by_recurrence(
        nmax,
        one=SlopePolynomial.constant(1),
        zero=SlopePolynomial.zero(),
        slope=SlopePolynomial.identity(),
    )
    return SymbolicSeries(nmax=nmax, coeffs=tuple(coeffs))


def numeric_coeffs(nmax, slope, precision):
    """Series coefficients at a fixed slope value, in BigFloat arithmetic.

    Runs the same recurrence as :func:`symbolic_coeffs` but directly over
    floating values, which keeps the cost flat while the symbolic degrees
    grow.  Results agree with evaluating the symbolic coefficients at
    ``slope`` to within a few units at the stated precision.
    """
    if nmax < 3:
        raise InvalidOrderError(f"nmax must be >= 3, got {nmax}")
    wp = precision + GUARD_DIGITS
    with workdps(precision):
        s = slope if isinstance(slope, mpf) else to_bigfloat(slope, wp)
        coeffs = _coeffs_by_recurrence(nmax, one=mpf(1), zero=mpf(0), slope=s)
        rounded = tuple(round_to(c, precision) for c in coeffs)
    return NumericSeries(nmax=nmax, slope=round_to(s, precision),
                         precision=precision, coeffs=rounded)


def coeffs_at(nmax, slope, precision):
    """Raw coefficient values f_0..f_nmax at a real or complex slope.

    Unlike :func:`numeric_coeffs` the values are returned unrounded at the
    guarded working precision and the slope may be complex.  The complex
    case exists for the root tracker: past the dimension where the tracked
    determinant root collides with its companion, the pair acquires a small
    imaginary part and the series must be evaluated off the real axis.
    """
    if nmax < 3:
        raise InvalidOrderError(f"nmax must be >= 3, got {nmax}")
    with workdps(precision):
        if isinstance(slope, mpc):
            coeffs = _coeffs_by_recurrence(nmax, one=mpc(1), zero=mpc(0),
                                           slope=mpc(slope))
        else:
            s = slope if isinstance(slope, mpf) else to_bigfloat(
                slope, precision + GUARD_DIGITS)
            coeffs = _coeffs_by_recurrence(nmax, one=mpf(1), zero=mpf(0), slope=s)
    return tuple(coeffs)


def residual_check(series, t):
    """Residual T(f, t) of the truncated series at the point ``t``.

    For a series truncated at nmax the residual vanishes to order
    t^(nmax - 1) inclusive, so for small t it scales like t^nmax; it is a
    diagnostic of how far the truncation can be trusted (|t| <= 1 is the
    useful range).
    """
    with workdps(series.precision):
        x = t if isinstance(t, mpf) else to_bigfloat(t, series.precision)
        c = series.coeffs
        n = len(c)
        f = mpf(0)
        for j in range(n - 1, -1, -1):
            f = f * x + c[j]
        fp = mpf(0)
        for j in range(n - 1, 0, -1):
            fp = fp * x + j * c[j]
        fpp = mpf(0)
        for j in range(n - 1, 1, -1):
            fpp = fpp * x + j * (j - 1) * c[j]
        residual = x * (f * fpp + fp * fp) - f * fp - 2 * x * x * f**3
    return round_to(residual, series.precision)
