"""Hankel determinants of the series coefficients and their root sequences.

Requiring a rational approximant of numerator degree N + d and denominator
degree N to reproduce the series through order 2N + d + 1 forces the Hankel
determinant

    H_D^d = det [ f_{i+j+d+1} ],   i, j = 0 .. D-1,   D = N + 1

to vanish.  Each H_D^d is a polynomial in the free half-slope s, and for
d >= 3 (the first s-dependent coefficient is f_4) its roots contain a
sequence s^{[D,d]} that converges rapidly to the physical half-slope as the
dimension D grows.  This module builds the determinants exactly (small D,
the test oracle) and numerically (the production path), tracks the root
sequence across D by nearest-root continuation, and fits the geometric
convergence law of the deltas  |2 s^{[D,d]} - 2 s^{[D-1,d]}|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from mpmath import mp, mpf

from .algebra import (
    GUARD_DIGITS,
    BigFloat,
    SlopePolynomial,
    bigfloat_str,
    poly_divexact,
    poly_real_roots,
    round_to,
    to_bigfloat,
    workdps,
)
from .errors import (
    DimensionTooLargeError,
    InsufficientDataError,
    InsufficientSeriesError,
    NoSignChangeError,
    PrecisionExhaustedError,
)
from .series import coeffs_at, numeric_coeffs, symbolic_coeffs

#: Practical bound for the exact determinant path; degrees explode beyond it.
EXACT_DIM_LIMIT = 12

#: Search interval for the starting (D = 2) roots: the physical half-slope is
#: negative and of order unity.
START_INTERVAL = (Fraction(-2), Fraction(0))

#: Window half-width for continuation, as a multiple of the running step scale.
WINDOW_FACTOR = 3

#: Per-dimension decay floor of the running step scale.  The observed
#: contraction is ~10^-0.7 per D; 0.3 is deliberately slower, so that one
#: anomalously small step (the sequence crosses its limit around D = 6)
#: cannot collapse the window below the next genuine step.
WINDOW_DECAY = 0.3

#: Subintervals scanned for sign changes inside a continuation window.
SCAN_POINTS = 64

#: Default precision policy: digits as a function of the dimension D.
def default_precision(D):
    return 40 + 2 * D


@dataclass(frozen=True)
class HankelSpec:
    """Dimension D and index displacement d of one Hankel determinant.

    The displacement must satisfy d >= 3 so that every matrix entry depends
    on the free half-slope.
    """

    dim: int
    disp: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.disp < 3:
            raise ValueError(f"displacement must be >= 3, got {self.disp}")

    @property
    def max_index(self):
        """Largest series index used: 2(D-1) + d + 1."""
        return 2 * (self.dim - 1) + self.disp + 1


@dataclass(frozen=True)
class RootRecord:
    """One member of a root sequence.

    ``root`` is the real part of the tracked determinant root and ``im`` its
    (canonically nonnegative) imaginary part -- exactly zero while the root
    is real and simple, which is every dimension until the tracked root
    collides with a companion and the pair moves infinitesimally off the
    axis.  ``delta`` is the modulus |2 z_D - 2 z_{D-1}| against the previous
    member (absent on the first record).
    """

    D: int
    root: BigFloat
    delta: Optional[BigFloat]
    precision_used: int
    im: BigFloat = mpf(0)

    @property
    def value(self):
        """The tracked root as a complex number (real when im == 0).

        Reconstructed under the record's own precision: mpmath constructors
        round to the ambient context, which may be far coarser.
        """
        if self.im == 0:
            return self.root
        with mp.workdps(self.precision_used + GUARD_DIGITS):
            return mp.mpc(self.root, self.im)


@dataclass(frozen=True)
class RootSequence:
    """The continued root branch s^{[D,d]} for one displacement d."""

    disp: int
    records: Tuple[RootRecord, ...]

    @property
    def final(self):
        return self.records[-1]

    def record_for(self, D):
        for rec in self.records:
            if rec.D == D:
                return rec
        raise KeyError(f"no record for D={D}")


@dataclass(frozen=True)
class ConvergenceFit:
    """Least-squares line through (D, log10 delta) over a dimension range."""

    slope_per_D: float
    level: float
    Drange: Tuple[int, int]


# ---------------------------------------------------------------------------
# Exact determinants
# ---------------------------------------------------------------------------

def det_exact(series, spec):
    """Exact Hankel determinant as a polynomial in the free half-slope.

    Fraction-free (Bareiss) elimination over the polynomial ring: every
    division is exact, intermediate entries stay polynomial, and row swaps
    only flip the sign.  Practical up to ``EXACT_DIM_LIMIT``; the numeric
    path takes over beyond that.

    Raises
    ------
    InsufficientSeriesError
        If the series does not reach index 2(D-1) + d + 1.
    DimensionTooLargeError
        If D exceeds the exact-path bound.
    """
    if spec.dim > EXACT_DIM_LIMIT:
        raise DimensionTooLargeError(
            f"exact path supports D <= {EXACT_DIM_LIMIT}, got D={spec.dim}")
    if series.nmax < spec.max_index:
        raise InsufficientSeriesError(
            f"need coefficients up to {spec.max_index}, series has {series.nmax}")

    n = spec.dim
    m = [[series.coeffs[i + j + spec.disp + 1] for j in range(n)] for i in range(n)]
    sign = 1
    prev = SlopePolynomial.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for r in range(k + 1, n):
                if not m[r][k].is_zero:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return SlopePolynomial.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = poly_divexact(pivot * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = SlopePolynomial.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def det_exact_minors(series, spec):
    """Brute-force cofactor expansion of the same determinant.

    Exponential in D; exists as the independent oracle for
    :func:`det_exact` at small dimensions.
    """
    if series.nmax < spec.max_index:
        raise InsufficientSeriesError(
            f"need coefficients up to {spec.max_index}, series has {series.nmax}")
    n = spec.dim
    entry = lambda i, j: series.coeffs[i + j + spec.disp + 1]

    def expand(rows, cols):
        if len(rows) == 1:
            return entry(rows[0], cols[0])
        i = rows[0]
        acc = SlopePolynomial.zero()
        for pos, j in enumerate(cols):
            minor = expand(rows[1:], cols[:pos] + cols[pos + 1:])
            term = entry(i, j) * minor
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    return expand(tuple(range(n)), tuple(range(n)))


# ---------------------------------------------------------------------------
# Numeric determinants
# ---------------------------------------------------------------------------

def det_numeric(spec, slope, precision, series_provider=None):
    """Sign and magnitude of the Hankel determinant at a numeric half-slope.

    Partially pivoted triangular elimination in BigFloat arithmetic at the
    stated precision (plus guard digits).  Returns ``(sign, log10_mag)``
    where sign is -1, 0 or +1 and log10_mag is the base-10 log of |det| as a
    plain float.  Sign 0 means the factorization cannot certify a sign at
    this precision -- the value sank below the roundoff floor of the
    elimination -- and signals precision escalation, not a mathematical
    zero.

    ``series_provider(nmax, slope, precision)`` defaults to
    :func:`hankelpade.series.numeric_coeffs`; tests inject a symbolic
    evaluation here to cross-check backends.
    """
    provider = series_provider or (
        lambda nmax, s, p: numeric_coeffs(nmax, s, p).coeffs)
    wp = precision + GUARD_DIGITS
    coeffs = provider(spec.max_index, slope, wp)
    n = spec.dim
    with mp.workdps(wp):
        m = [[mpf(coeffs[i + j + spec.disp + 1]) for j in range(n)] for i in range(n)]
        # Roundoff floor: elimination noise relative to the row scales.
        scale_log = mpf(0)
        for row in m:
            big = max(abs(v) for v in row)
            if big == 0:
                return 0, float("-inf")
            scale_log += mp.log10(big)
        floor_log = scale_log - wp + 8

        sign = 1
        log_mag = mpf(0)
        for k in range(n):
            p = max(range(k, n), key=lambda r: abs(m[r][k]))
            if m[p][k] == 0:
                return 0, float(floor_log)
            if p != k:
                m[k], m[p] = m[p], m[k]
                sign = -sign
            pivot = m[k][k]
            if pivot < 0:
                sign = -sign
            log_mag += mp.log10(abs(pivot))
            for i in range(k + 1, n):
                factor = m[i][k] / pivot
                if factor == 0:
                    continue
                row_i, row_k = m[i], m[k]
                for j in range(k + 1, n):
                    row_i[j] -= factor * row_k[j]
        if log_mag <= floor_log:
            return 0, float(log_mag)
    return sign, float(log_mag)


def _det_value(spec, s, precision):
    """Determinant value at a real or complex slope (partial-pivot LU).

    Unlike :func:`det_numeric` this returns the raw value instead of a
    certified (sign, magnitude) pair; it backs the complex pair tracker,
    where a secant iteration wants signed values and certification is
    replaced by the stabilization ladder.
    """
    wp = precision + GUARD_DIGITS
    coeffs = coeffs_at(spec.max_index, s, wp)
    n = spec.dim
    with mp.workdps(wp):
        m = [[coeffs[i + j + spec.disp + 1] for j in range(n)] for i in range(n)]
        det = mp.mpf(1)
        for k in range(n):
            p = max(range(k, n), key=lambda r: abs(m[r][k]))
            if m[p][k] == 0:
                return mp.mpf(0)
            if p != k:
                m[k], m[p] = m[p], m[k]
                det = -det
            pivot = m[k][k]
            det *= pivot
            for i in range(k + 1, n):
                factor = m[i][k] / pivot
                if factor == 0:
                    continue
                row_i, row_k = m[i], m[k]
                for j in range(k + 1, n):
                    row_i[j] -= factor * row_k[j]
    return det


# ---------------------------------------------------------------------------
# Root continuation
# ---------------------------------------------------------------------------

def _eval_certified(spec, s, precision, series_provider, escalations=6):
    """Certified determinant value at ``s``: (sign, log10 |det|).

    Escalates the working precision by 50% steps whenever the sign cannot be
    certified at the current one (the in-band sign-0 signal).
    """
    p = precision
    for _ in range(escalations):
        sign, logmag = det_numeric(spec, s, p, series_provider)
        if sign != 0:
            return sign, logmag
        p = math.ceil(p * 3 / 2)
    raise PrecisionExhaustedError(
        f"could not certify determinant sign near s={bigfloat_str(s, 12)} "
        f"after escalating to {p} digits")


def _refine_bracket(spec, lo, hi, sign_lo, precision, series_provider):
    """Secant-polished bisection for the determinant root inside [lo, hi].

    Every evaluation is sign-certified, so the bracket never opens; a secant
    proposal built from (sign, log-magnitude) pairs is used whenever it
    stays strictly inside the bracket, and a bisection step otherwise.
    Terminates when the bracket width reaches the requested precision.
    """
    wp = precision + GUARD_DIGITS
    with mp.workdps(wp + 20):
        lo, hi = mpf(lo), mpf(hi)
        tol = mpf(10) ** (-(precision + 2))
        x_prev = f_prev = None
        x = (lo + hi) / 2
        for _ in range(precision * 4 + 80):
            sign_x, logmag = _eval_certified(spec, x, precision, series_provider)
            fx = sign_x * mpf(10) ** mpf(logmag)
            if sign_x == sign_lo:
                lo = x
            else:
                hi = x
            width = hi - lo
            if width <= tol * max(mpf(1), abs(lo)):
                return (lo + hi) / 2
            x_next = None
            if f_prev is not None and f_prev != fx:
                cand = x - fx * (x - x_prev) / (fx - f_prev)
                if lo < cand < hi:
                    x_next = cand
            if x_next is None:
                x_next = (lo + hi) / 2
            x_prev, f_prev = x, fx
            x = x_next
    raise PrecisionExhaustedError(
        f"bracket refinement stalled at D={spec.dim}, d={spec.disp}")


def root_for(spec, seed, window_halfwidth, precision, series_provider=None):
    """Root of the numeric determinant nearest ``seed`` inside a window.

    Scans [seed - w, seed + w] for certified sign changes, takes the bracket
    nearest the seed, refines it, then re-verifies the result at 20 extra
    digits (the self-validating ladder).

    Raises
    ------
    NoSignChangeError
        If no certified sign change exists in the window.
    PrecisionExhaustedError
        If the verification ladder fails to stabilize.
    """
    wp = precision + GUARD_DIGITS
    with mp.workdps(wp + 40):
        seed = to_bigfloat(seed, wp + 40) if not isinstance(seed, mpf) else mpf(seed)
        w = to_bigfloat(window_halfwidth, wp) if not isinstance(window_halfwidth, mpf) \
            else mpf(window_halfwidth)
        pts = [seed - w + 2 * w * k / SCAN_POINTS for k in range(SCAN_POINTS + 1)]
        signs = []
        for s in pts:
            sign, _ = _eval_certified(spec, s, precision, series_provider)
            signs.append(sign)
        brackets = [
            (pts[i], pts[i + 1], signs[i])
            for i in range(SCAN_POINTS)
            if signs[i] != signs[i + 1]
        ]
        if not brackets:
            raise NoSignChangeError(
                f"no sign change of H(D={spec.dim}, d={spec.disp}) within "
                f"[{bigfloat_str(seed - w, 12)}, {bigfloat_str(seed + w, 12)}]")
        lo, hi, sign_lo = min(
            brackets, key=lambda br: abs((br[0] + br[1]) / 2 - seed))

        root = _refine_bracket(spec, lo, hi, sign_lo, precision, series_provider)
        check = _refine_bracket(spec, lo, hi, sign_lo, precision + 20,
                                series_provider)
        if abs(root - check) > mpf(10) ** (-(precision - 1)) * max(mpf(1), abs(root)):
            raise PrecisionExhaustedError(
                f"verification at {precision + 20} digits moved the root at "
                f"D={spec.dim}, d={spec.disp}")
    return round_to(check, precision)


def _secant_complex(spec, seed, window, precision, avoid=None):
    """Complex secant iteration for a determinant root near ``seed``.

    The seed is displaced off the real axis so the iteration can leave it.
    With ``avoid`` set, that already-found root is deflated out of the
    function, so the iteration converges to its companion.  Iterates
    escaping more than a few windows from the seed abort the search.
    """
    wp = precision + GUARD_DIGITS + 30
    with mp.workdps(wp + 20):
        seed = mp.mpc(seed)
        h = mpf(window) / 4
        tol = mpf(10) ** (-(precision + 2))

        def func(z):
            val = _det_value(spec, z, wp)
            return val / (z - avoid) if avoid is not None else val

        z0 = seed + mp.mpc(0, 1) * h
        z1 = seed + mp.mpc(1, 2) * h / 4
        f0 = func(z0)
        f1 = func(z1)
        for _ in range(140):
            if f1 == f0:
                z1 += mp.mpc(0, 1) * h * mpf(10) ** (-12)
                f1 = func(z1)
                continue
            z2 = z1 - f1 * (z1 - z0) / (f1 - f0)
            if abs(z2 - seed) > 6 * mpf(window):
                raise NoSignChangeError(
                    f"no determinant root (real or complex pair) near "
                    f"{bigfloat_str(seed.real, 12)} at D={spec.dim}, d={spec.disp}")
            step = abs(z2 - z1)
            z0, f0 = z1, f1
            z1 = z2
            if step <= tol * max(mpf(1), abs(z1)):
                return z1
            f1 = func(z1)
    raise PrecisionExhaustedError(
        f"complex tracking stalled at D={spec.dim}, d={spec.disp}")


def _pair_member(spec, seed, window, precision):
    """Both members of the near-degenerate pair; returns the one nearest
    the seed (nearest-root continuation applied within the pair)."""
    first = _secant_complex(spec, seed, window, precision)
    try:
        second = _secant_complex(spec, seed, window, precision, avoid=first)
    except (NoSignChangeError, PrecisionExhaustedError):
        return first  # companion outside the window: effectively simple
    with mp.workdps(precision + GUARD_DIGITS + 30):
        zs = mp.mpc(seed)
        return min((first, second), key=lambda z: abs(z - zs))


def _track_pair(spec, seed, window, precision):
    """Locate the tracked root past the pair collision, with verification.

    Finds both pair members by secant plus deflation, keeps the one nearest
    the previous member, and repeats at 20 more digits; agreement of the
    two passes is the stabilization criterion (escalating by 50% on
    failure).  Returns (real part, imaginary part) with the imaginary part
    canonicalized to >= 0 and snapped to exactly zero when it is below the
    refinement tolerance -- the root is then a real member of the pair.
    """
    p = precision
    for _ in range(3):
        try:
            z1 = _pair_member(spec, seed, window, p)
            z2 = _pair_member(spec, seed, window, p + 20)
        except PrecisionExhaustedError:
            p = math.ceil(p * 3 / 2)
            continue
        with mp.workdps(p + GUARD_DIGITS):
            if abs(z1 - z2) <= mpf(10) ** (-(precision - 1)) * max(mpf(1), abs(z2)):
                im = abs(z2.imag)
                if im <= mpf(10) ** (-(precision - 1)) * max(mpf(1), abs(z2)):
                    im = mpf(0)
                return round_to(z2.real, precision), round_to(im, precision)
        p = math.ceil(p * 3 / 2)
    raise PrecisionExhaustedError(
        f"pair tracking failed to stabilize at D={spec.dim}, d={spec.disp}")


def _start_branch(disp, Dmax, prec_of):
    """Identify the starting branch from the exact determinants D = 2..4.

    All simple real roots of H_2 in the start interval are candidates; each
    is continued to D = 3 and (when available) D = 4 by nearest-root
    matching, and the branch with the smallest final step wins.  Degenerate
    roots (multiplicity > 1, e.g. the persistent root at 0) are excluded.
    """
    top = min(4, Dmax)
    sym = symbolic_coeffs(2 * (top - 1) + disp + 2)
    roots_at = {}
    for D in range(2, top + 1):
        det = det_exact(sym, HankelSpec(D, disp))
        roots = [r.value for r in poly_real_roots(det, START_INTERVAL, prec_of(D))
                 if r.multiplicity == 1]
        if not roots:
            raise NoSignChangeError(
                f"no simple real root of the exact determinant at D={D}, "
                f"d={disp} in {START_INTERVAL}")
        roots_at[D] = roots

    best = None
    for r2 in roots_at[2]:
        branch = [r2]
        for D in range(3, top + 1):
            prev = branch[-1]
            branch.append(min(roots_at[D], key=lambda r: abs(r - prev)))
        score = abs(branch[-1] - branch[-2])
        if best is None or score < best[0]:
            best = (score, branch)
    return best[1]


def root_sequence(disp, Dmax, precision="auto", series_provider=None):
    """Track the converging root branch from D = 2 up to ``Dmax``.

    Parameters
    ----------
    disp : int
        Index displacement d >= 3.
    Dmax : int
        Largest Hankel dimension, >= 3.
    precision : "auto" or int
        "auto" applies the default policy (40 + 2 D digits at dimension D);
        an integer fixes the digits for every member.

    Returns
    -------
    RootSequence

    Notes
    -----
    The branch start (D <= 4) uses the exact determinants; from D = 5 the
    root is continued numerically with a window that shrinks proportionally
    to the last step (floored at 10x the requested tolerance), so the
    branch cannot jump to a stranger root once the deltas are small.
    Errors from :func:`root_for` are re-raised with the failing D attached.
    """
    if disp < 3:
        raise ValueError(f"displacement must be >= 3, got {disp}")
    if Dmax < 3:
        raise ValueError(f"Dmax must be >= 3, got {Dmax}")
    if precision == "auto":
        prec_of = default_precision
    else:
        fixed = int(precision)
        prec_of = lambda D: fixed

    branch = _start_branch(disp, Dmax, prec_of)
    records = []
    prev_root = None
    for D, root in enumerate(branch, start=2):
        delta = None
        if prev_root is not None:
            delta = _delta(root, prev_root, prec_of(D))
        records.append(RootRecord(D=D, root=root, delta=delta,
                                  precision_used=prec_of(D)))
        prev_root = root

    scale = None
    pair_regime = False
    for D in range(len(branch) + 2, Dmax + 1):
        p = prec_of(D)
        spec_D = HankelSpec(D, disp)
        last = records[-1].value
        with mp.workdps(p + GUARD_DIGITS):
            step = abs(mp.mpc(last) - mp.mpc(records[-2].value))
            scale = step if scale is None else max(step, WINDOW_DECAY * scale)
            window = max(WINDOW_FACTOR * scale, mpf(10) ** (-(p - 1)))

        root, im = None, mpf(0)
        if not pair_regime:
            try:
                root = root_for(spec_D, records[-1].root, window, p, series_provider)
            except NoSignChangeError:
                # The tracked root has collided with its companion: the pair
                # is now either two nearly coincident real roots or a complex
                # conjugate pair, and sign bisection no longer applies.
                pair_regime = True
            except PrecisionExhaustedError as exc:
                raise PrecisionExhaustedError(f"at D={D}: {exc}") from exc
        if root is None:
            try:
                root, im = _track_pair(spec_D, last, window, p)
            except (NoSignChangeError, PrecisionExhaustedError) as exc:
                raise type(exc)(f"at D={D}: {exc}") from exc

        with mp.workdps(p + GUARD_DIGITS):
            new = mp.mpc(root, im) if im != 0 else root
            scale = max(abs(mp.mpc(new) - mp.mpc(last)), WINDOW_DECAY * scale)
        records.append(RootRecord(D=D, root=root, delta=_delta(new, last, p),
                                  precision_used=p, im=im))
    return RootSequence(disp=disp, records=tuple(records))


def _delta(new, prev, precision):
    with workdps(precision):
        return round_to(abs(2 * (mp.mpc(new) - mp.mpc(prev))), precision)


def convergence_fit(seq, Dmin, Dmax):
    """Least-squares line through (D, log10 delta) over ``Dmin <= D <= Dmax``.

    Returns a :class:`ConvergenceFit` whose ``slope_per_D`` is the decay
    exponent per unit D and whose ``level`` is the intercept at D = 0.

    Raises
    ------
    InsufficientDataError
        If fewer than 4 records in range carry a nonzero delta.
    """
    ds = [(rec.D, rec.delta) for rec in seq.records
          if Dmin <= rec.D <= Dmax and rec.delta is not None and rec.delta > 0]
    if len(ds) < 4:
        raise InsufficientDataError(
            f"need at least 4 usable records in [{Dmin}, {Dmax}], have {len(ds)}")
    xs = np.array([float(D) for D, _ in ds])
    ys = np.array([float(mp.log10(delta)) for _, delta in ds])
    slope, level = np.polyfit(xs, ys, 1)
    return ConvergenceFit(slope_per_D=float(slope), level=float(level),
                          Drange=(Dmin, Dmax))
