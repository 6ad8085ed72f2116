"""Rational (Pade) reconstruction of the Thomas-Fermi function.

With the half-slope determined, the truncated series for f(t) = sqrt(u(t^2))
is resummed as a ratio of polynomials [M/N](t) whose expansion matches the
series through order M + N.  Choosing N = M + 3 makes the approximant decay
like t^-3, which translates into the physically correct u ~ x^-3 falloff at
infinity.  The Thomas-Fermi function and its derivative follow from

    u(x) = f(sqrt(x))^2,     u'(x) = f(sqrt(x)) * f'(sqrt(x)) / sqrt(x),

with the removable singularity at the origin evaluated exactly:
u(0) = 1 and u'(0) = twice the half-slope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from mpmath import mp, mpf

from .algebra import (
    GUARD_DIGITS,
    BigFloat,
    bigfloat_str,
    round_to,
    to_bigfloat,
    workdps,
)
from .errors import InsufficientSeriesError, PoleEncounteredError, SingularSystemError


@dataclass(frozen=True)
class PadeApproximant:
    """Rational approximant a(t)/b(t) built from a numeric series.

    b[0] is normalized to 1 and the expansion of a/b agrees with the source
    series through order M + N (verified at construction).
    """

    M: int
    N: int
    a: Tuple[BigFloat, ...]
    b: Tuple[BigFloat, ...]
    slope: BigFloat
    precision: int


@dataclass(frozen=True)
class TFEvaluation:
    """The Thomas-Fermi function and derivative at one coordinate.

    ``error`` is set (and the values are None) only in table rows where the
    evaluation failed, e.g. on a denominator pole.
    """

    x: BigFloat
    u: Optional[BigFloat]
    uprime: Optional[BigFloat]
    error: Optional[str] = None


def _solve_full_pivot(rows, rhs, precision):
    """Dense Gaussian elimination with full pivoting on BigFloat entries."""
    n = len(rows)
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    perm = list(range(n))
    scale = max((abs(v) for r in m for v in r), default=mpf(0))
    if scale == 0:
        raise SingularSystemError("denominator system is identically zero")
    tiny = scale * mpf(10) ** (-(precision + GUARD_DIGITS - 6))
    for k in range(n):
        pr, pc = max(
            ((i, j) for i in range(k, n) for j in range(k, n)),
            key=lambda ij: abs(m[ij[0]][ij[1]]),
        )
        if abs(m[pr][pc]) <= tiny:
            raise SingularSystemError(
                f"denominator system numerically singular at pivot {k}")
        m[k], m[pr] = m[pr], m[k]
        if pc != k:
            for row in m:
                row[k], row[pc] = row[pc], row[k]
            perm[k], perm[pc] = perm[pc], perm[k]
        pivot = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / pivot
            if f == 0:
                continue
            for j in range(k, n + 1):
                m[i][j] -= f * m[k][j]
    x = [mpf(0)] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n]
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    out = [mpf(0)] * n
    for pos, orig in enumerate(perm):
        out[orig] = x[pos]
    return out


def pade_construct(series, M, N):
    """Build the [M/N] approximant matching ``series`` through order M + N.

    The denominator coefficients solve the linear conditions that annihilate
    orders M+1 .. M+N of the product b(t) * series, with b[0] = 1; the
    numerator then follows by convolution.  The system is solved by dense
    elimination with full pivoting at the series precision, and the
    order-matching property is re-verified a posteriori.

    Raises
    ------
    InsufficientSeriesError
        If the series carries fewer than M + N + 1 coefficients.
    SingularSystemError
        If the denominator system cannot be solved (or the solution fails
        the order-matching check) at working precision.
    """
    if M < 0 or N < 0:
        raise ValueError("Pade orders must be nonnegative")
    if series.nmax < M + N:
        raise InsufficientSeriesError(
            f"need series through order {M + N}, have {series.nmax}")
    c = series.coeffs
    precision = series.precision

    with workdps(precision):
        if N == 0:
            b = [mpf(1)]
        else:
            coef = lambda i: c[i] if i >= 0 else mpf(0)
            rows = [[coef(M + 1 + i - k) for k in range(1, N + 1)]
                    for i in range(N)]
            rhs = [-coef(M + 1 + i) for i in range(N)]
            b = [mpf(1)] + _solve_full_pivot(rows, rhs, precision)
        a = [
            sum((b[k] * c[j - k] for k in range(min(j, N) + 1)), mpf(0))
            for j in range(M + 1)
        ]

        # A posteriori: re-expand a/b and compare with the source series.
        expand = []
        for m_ord in range(M + N + 1):
            acc = a[m_ord] if m_ord <= M else mpf(0)
            for k in range(1, min(m_ord, N) + 1):
                acc -= b[k] * expand[m_ord - k]
            expand.append(acc)
        tol = mpf(10) ** (-(precision - 8))
        for m_ord, (got, want) in enumerate(zip(expand, c)):
            if abs(got - want) > tol * max(mpf(1), abs(want)):
                raise SingularSystemError(
                    f"order-matching failed at t^{m_ord}: "
                    f"|{got - want}| exceeds tolerance")

        a = tuple(round_to(v, precision) for v in a)
        b = tuple(round_to(v, precision) for v in b)
    return PadeApproximant(M=M, N=N, a=a, b=b,
                           slope=series.slope, precision=precision)


def pade_eval(P, t):
    """Value and analytic derivative of the approximant at ``t``.

    Raises
    ------
    PoleEncounteredError
        If the denominator magnitude falls below tolerance at ``t``.
    """
    with workdps(P.precision):
        x = t if isinstance(t, mpf) else to_bigfloat(t, P.precision)

        def horner(cs):
            acc = mpf(0)
            for v in reversed(cs):
                acc = acc * x + v
            return acc

        num = horner(P.a)
        den = horner(P.b)
        nump = horner([k * v for k, v in enumerate(P.a)][1:])
        denp = horner([k * v for k, v in enumerate(P.b)][1:])
        mag = sum(abs(v) * abs(x) ** k for k, v in enumerate(P.b))
        if abs(den) <= max(mag, mpf(1)) * mpf(10) ** (-(P.precision - 10)):
            raise PoleEncounteredError(
                f"denominator vanishes near t={bigfloat_str(x, 12)}")
        f = num / den
        fprime = (nump * den - num * denp) / (den * den)
    return round_to(f, P.precision), round_to(fprime, P.precision)


def tf_eval(P, x):
    """Thomas-Fermi function and derivative at ``x >= 0`` via t = sqrt(x)."""
    with workdps(P.precision):
        xv = x if isinstance(x, mpf) else to_bigfloat(x, P.precision)
        if xv < 0:
            raise ValueError(f"x must be >= 0, got {bigfloat_str(xv, 12)}")
        if xv == 0:
            return TFEvaluation(x=xv, u=mpf(1),
                                uprime=round_to(2 * P.slope, P.precision))
        t = mp.sqrt(xv)
        f, fp = pade_eval(P, t)
        u = f * f
        uprime = f * fp / t
    return TFEvaluation(x=round_to(xv, P.precision),
                        u=round_to(u, P.precision),
                        uprime=round_to(uprime, P.precision))


def tf_table(P, xs):
    """Evaluate the approximant at each coordinate, annotating failed rows.

    A pole (or other evaluation error) marks only that row; remaining rows
    are still produced, in input order.
    """
    rows = []
    for x in xs:
        try:
            rows.append(tf_eval(P, x))
        except (PoleEncounteredError, ValueError) as exc:
            xv = x if isinstance(x, mpf) else to_bigfloat(x, P.precision)
            rows.append(TFEvaluation(x=xv, u=None, uprime=None, error=str(exc)))
    return rows
