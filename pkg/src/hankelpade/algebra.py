"""Exact coefficient arithmetic and explicit-precision floating point.

Every symbolic object in this package is built from two scalar types:

* ``Rational`` -- an exact arbitrary-size fraction, stored in lowest terms
  with a positive denominator.  This is :class:`fractions.Fraction` from the
  standard library, which already guarantees both invariants.
* ``BigFloat`` -- an arbitrary-precision floating value (``mpmath.mpf``).
  Precision is never ambient in the public API: every numeric operation
  takes the working precision in decimal digits, adds internal guard digits,
  and rounds the result back to the stated precision.

On top of those sits :class:`SlopePolynomial`, a dense univariate polynomial
over ``Rational`` in the free half-slope parameter (the one Taylor
coefficient the transformed equation leaves undetermined).  Series
coefficients and determinants are polynomials of this kind, and the roots of
those polynomials are what the rest of the package tracks.

Real roots are isolated exactly: a Sturm chain over the integers certifies
the number of distinct roots in the search interval, square-free (Yun)
decomposition supplies exact multiplicities, and each simple root is then
refined by bisection plus safeguarded Newton steps to the requested number
of digits.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple

import mpmath
from mpmath import mp, mpf

from .errors import PrecisionExhaustedError, ZeroPolynomialError

Rational = Fraction
BigFloat = mpf

#: Guard digits added to every stated working precision before computing.
GUARD_DIGITS = 10


# ---------------------------------------------------------------------------
# BigFloat helpers
# ---------------------------------------------------------------------------

def workdps(precision):
    """Context manager running mpmath at ``precision`` plus guard digits."""
    if precision < 10:
        raise ValueError("working precision below 10 digits is not supported")
    return mp.workdps(precision + GUARD_DIGITS)


def round_to(x, precision):
    """Round ``x`` to ``precision`` decimal digits (strips guard digits)."""
    with mp.workdps(precision):
        return +mpf(x)


def to_bigfloat(value, precision):
    """Convert ``value`` (str, int, Fraction, float, mpf) at ``precision`` digits.

    Strings and Fractions convert without intermediate double rounding, so a
    decimal string round-trips through :func:`bigfloat_str` unchanged.
    """
    with workdps(precision):
        if isinstance(value, Fraction):
            out = mpf(value.numerator) / value.denominator
        else:
            out = mpf(value)
    return round_to(out, precision)


def bigfloat_str(x, precision):
    """Decimal-string form of ``x`` with ``precision`` significant digits.

    An existing mpf passes through unrounded (conversion at the ambient
    context would silently truncate high-precision values).
    """
    if not isinstance(x, mpf):
        with mp.workdps(precision + GUARD_DIGITS):
            x = mpf(x)
    return mpmath.nstr(x, precision, strip_zeros=True)


# ---------------------------------------------------------------------------
# Polynomials over Rational
# ---------------------------------------------------------------------------

class SlopePolynomial:
    """Dense polynomial in the free half-slope over exact rationals.

    ``coeffs[k]`` is the coefficient of the k-th power.  Trailing zeros are
    trimmed on construction, so the zero polynomial has an empty coefficient
    tuple and ``degree == -1``.  All arithmetic is exact; instances are
    immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("SlopePolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def identity(cls):
        """The polynomial equal to the slope variable itself."""
        return cls((0, 1))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SlopePolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return SlopePolynomial(out)

    def __neg__(self):
        return SlopePolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, SlopePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SlopePolynomial):
            if self.is_zero or other.is_zero:
                return SlopePolynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return SlopePolynomial(out)
        if isinstance(other, (int, Fraction)):
            return SlopePolynomial(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return SlopePolynomial(tuple(c / Fraction(scalar) for c in self.coeffs))
        return NotImplemented

    def derivative(self):
        return SlopePolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, s):
        """Exact Horner evaluation at a Rational (or int) point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        return isinstance(other, SlopePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SlopePolynomial({[str(c) for c in self.coeffs]})"


def poly_arith(a, b, op):
    """Exact ring arithmetic on slope polynomials; ``op`` is add, sub or mul."""
    try:
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)
    except KeyError:
        raise ValueError(f"unknown op {op!r}; expected add, sub or mul") from None


def poly_eval(p, s, precision):
    """Evaluate ``p`` at a BigFloat point by Horner's scheme.

    Parameters
    ----------
    p : SlopePolynomial
    s : BigFloat or value convertible at the working precision
    precision : int
        Result precision in decimal digits (>= 10); guard digits are used
        internally and stripped from the result.
    """
    with workdps(precision):
        x = to_bigfloat(s, precision + GUARD_DIGITS) if not isinstance(s, mpf) else s
        acc = mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * x + mpf(c.numerator) / c.denominator
    return round_to(acc, precision)


# ---------------------------------------------------------------------------
# Exact integer-polynomial machinery for root certification
# ---------------------------------------------------------------------------

def _int_coeffs(p):
    """Primitive integer coefficient list proportional to ``p`` (same sign)."""
    den = lcm(*(c.denominator for c in p.coeffs)) if p.coeffs else 1
    ints = [int(c * den) for c in p.coeffs]
    content = 0
    for c in ints:
        content = gcd(content, abs(c))
    if content > 1:
        ints = [c // content for c in ints]
    return ints


def _ip_degree(a):
    return len(a) - 1


def _ip_eval(a, x):
    acc = 0 if isinstance(x, int) else Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _ip_deriv(a):
    return [k * c for k, c in enumerate(a) if k]


def _ip_prem(a, b):
    """Pseudo-remainder of integer polynomials, scaled by a positive constant.

    Returns r with r == m * (a mod b) for some m > 0, keeping all
    coefficients integral.
    """
    r = list(a)
    db, lb = _ip_degree(b), b[-1]
    steps = 0
    while _ip_degree(r) >= db:
        dr = _ip_degree(r)
        lead = r[-1]
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[dr - db + i] -= lead * b[i]
        while r and r[-1] == 0:
            r.pop()
        steps += 1
        if not r:
            break
    if steps % 2 == 1 and lb < 0:
        r = [-c for c in r]  # keep the overall multiplier positive
    return r


def _ip_primitive(a):
    content = 0
    for c in a:
        content = gcd(content, abs(c))
    return [c // content for c in a] if content > 1 else list(a)


def _sturm_chain(a):
    """Sturm chain of an integer polynomial (content-normalized)."""
    chain = [list(a), _ip_deriv(a)]
    while chain[-1] and _ip_degree(chain[-1]) > 0:
        r = _ip_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_ip_primitive([-c for c in r]))
    if not chain[-1]:
        chain.pop()
    return chain


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sturm_count(chain, lo, hi):
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    at_lo = _sign_changes([_ip_eval(q, lo) for q in chain])
    at_hi = _sign_changes([_ip_eval(q, hi) for q in chain])
    return at_lo - at_hi


# ---------------------------------------------------------------------------
# Exact gcd / square-free structure over Rational
# ---------------------------------------------------------------------------

def _poly_divmod(a, b):
    """Exact quotient and remainder of slope polynomials (b nonzero)."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a.coeffs) - len(b.coeffs) + 1, 0)
    r = list(a.coeffs)
    lb = b.coeffs[-1]
    while len(r) >= len(b.coeffs):
        f = r[-1] / lb
        k = len(r) - len(b.coeffs)
        q[k] = f
        for i, c in enumerate(b.coeffs):
            r[k + i] -= f * c
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
    return SlopePolynomial(q), SlopePolynomial(r)


def poly_divexact(a, b):
    """Exact polynomial quotient; raises if ``b`` does not divide ``a``."""
    q, r = _poly_divmod(a, b)
    if not r.is_zero:
        raise ArithmeticError("inexact polynomial division")
    return q


def _poly_gcd(a, b):
    """Monic gcd of slope polynomials."""
    while not b.is_zero:
        a, b = b, _poly_divmod(a, b)[1]
    if a.is_zero:
        return a
    return a / a.coeffs[-1]


def _squarefree_factors(p):
    """Yun decomposition: list of (monic square-free factor, multiplicity)."""
    p = p / p.coeffs[-1]
    dp = p.derivative()
    g = _poly_gcd(p, dp)
    if g.degree <= 0:
        return [(p, 1)]
    c = poly_divexact(p, g)
    d = poly_divexact(dp, g) - c.derivative()
    factors = []
    i = 1
    while c.degree > 0:
        a = _poly_gcd(c, d)  # monic; constant 1 when no factor at this multiplicity
        if a.degree > 0:
            factors.append((a, i))
        c = poly_divexact(c, a)
        d = poly_divexact(d, a) - c.derivative()
        i += 1
    return factors


# ---------------------------------------------------------------------------
# Real roots
# ---------------------------------------------------------------------------

class PolyRoot(NamedTuple):
    """A refined real root with its exact multiplicity."""

    value: BigFloat
    multiplicity: int


def _isolate_simple_roots(factor, lo, hi):
    """Disjoint rational intervals each holding one root of a square-free factor.

    Returns (exact_rational_roots, open_intervals, deflated_factor).  The
    Sturm count at every split certifies that no root inside [lo, hi] is
    missed.  Whenever an endpoint or split point lands exactly on a
    (necessarily rational) root, that root is recorded, divided out, and
    isolation restarts on the quotient -- so the produced intervals never
    have a root at an endpoint and each brackets a sign change.
    """
    exact = []
    work = factor
    while True:
        if work.degree <= 0:
            return exact, [], work
        hit = None
        if work(lo) == 0:
            hit = lo
        elif hi != lo and work(hi) == 0:
            hit = hi
        if hit is None:
            ints = _int_coeffs(work)
            chain = _sturm_chain(ints)
            intervals = []
            stack = [(lo, hi, _sturm_count(chain, lo, hi))]
            while stack and hit is None:
                a, b, n = stack.pop()
                if n == 0:
                    continue
                if n == 1:
                    intervals.append((a, b))
                    continue
                m = (a + b) / 2
                if _ip_eval(ints, m) == 0:
                    hit = m
                    break
                stack.append((a, m, _sturm_count(chain, a, m)))
                stack.append((m, b, _sturm_count(chain, m, b)))
            if hit is None:
                return exact, intervals, work
        exact.append(hit)
        work = poly_divexact(work, SlopePolynomial([-hit, 1]))


def _refine_root(factor, a, b, precision):
    """Refine the single root of ``factor`` in (a, b) to ``precision`` digits.

    Bisection first (signs are exact rational evaluations while the bracket
    is wide), then Newton polishing in guarded BigFloat arithmetic with the
    bracket as a safeguard.
    """
    fa = factor(a)
    fb = factor(b)
    if fa == 0:
        return to_bigfloat(a, precision)
    if fb == 0:
        return to_bigfloat(b, precision)
    assert (fa > 0) != (fb > 0), "interval does not bracket a sign change"
    # Rational bisection down to a comfortable Newton basin.
    for _ in range(60):
        if b - a < Fraction(1, 10**12):
            break
        m = (a + b) / 2
        fm = factor(m)
        if fm == 0:
            return to_bigfloat(m, precision)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm

    deriv = factor.derivative()
    wp = precision + GUARD_DIGITS
    with mp.workdps(wp):
        lo = to_bigfloat(a, wp)
        hi = to_bigfloat(b, wp)
        x = (lo + hi) / 2
        tol = mpf(10) ** (-(precision + 3))
        for _ in range(200):
            fx = poly_eval(factor, x, wp)
            dx = poly_eval(deriv, x, wp)
            if dx == 0:
                x = (lo + hi) / 2  # flat spot: fall back to the bracket midpoint
                continue
            step = fx / dx
            x_new = x - step
            if not (lo <= x_new <= hi):
                x_new = (lo + hi) / 2  # Newton left the bracket
                step = x_new - x
            x = x_new
            if abs(step) <= tol * max(mpf(1), abs(x)):
                return round_to(x, precision)
    raise PrecisionExhaustedError(
        f"root refinement did not reach {precision} digits"
    )


def poly_real_roots(p, interval, precision):
    """All real roots of ``p`` in a closed interval, with multiplicities.

    Parameters
    ----------
    p : SlopePolynomial
        Must not be identically zero.
    interval : pair of Rational-convertible bounds (lo, hi)
    precision : int
        Digits each root is refined to.

    Returns
    -------
    list of PolyRoot, sorted by value

    Raises
    ------
    ZeroPolynomialError
        If ``p`` is the zero polynomial.

    Notes
    -----
    A Sturm chain certifies the root count inside the interval, so no root
    can be silently skipped; Yun square-free decomposition supplies exact
    multiplicities.  A root of multiplicity > 1 is degenerate for root
    continuation and is reported so callers can exclude it.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo > hi:
        lo, hi = hi, lo
    if p.degree == 0:
        return []

    found = []
    for factor, mult in _squarefree_factors(p):
        if factor.degree <= 0:
            continue
        exact, intervals, deflated = _isolate_simple_roots(factor, lo, hi)
        for r in exact:
            found.append(PolyRoot(to_bigfloat(r, precision), mult))
        for a, b in intervals:
            found.append(PolyRoot(_refine_root(deflated, a, b, precision), mult))
    found.sort(key=lambda root: root.value)
    return found
