"""Pade construction, evaluation, and the Thomas-Fermi reconstruction."""

import pytest
from mpmath import mp, mpf

from hankelpade import (
    InsufficientSeriesError,
    NumericSeries,
    PoleEncounteredError,
    SingularSystemError,
    numeric_coeffs,
    pade_construct,
    pade_eval,
    tf_eval,
    tf_table,
    to_bigfloat,
)

# 25 digits of the converged half-slope; plenty for every check here.
SLOPE = "-0.7940355113056876562033246"


def _series(values, precision=40, slope="0"):
    vals = tuple(to_bigfloat(v, precision) for v in values)
    return NumericSeries(nmax=len(vals) - 1, slope=to_bigfloat(slope, precision),
                         precision=precision, coeffs=vals)


@pytest.fixture(scope="module")
def tf58():
    series = numeric_coeffs(13, to_bigfloat(SLOPE, 60), 60)
    return pade_construct(series, 5, 8)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_geometric_series_0_1():
    P = pade_construct(_series([1, 1]), 0, 1)
    assert P.a == (mpf(1),)
    assert len(P.b) == 2 and P.b[0] == 1
    assert abs(P.b[1] + 1) < mpf(10) ** -38


def test_zeroth_order_is_the_constant():
    series = numeric_coeffs(3, to_bigfloat(SLOPE, 40), 40)
    P = pade_construct(series, 0, 0)
    assert P.a == (mpf(1),)
    assert P.b == (mpf(1),)


def test_order_matching_against_independent_pade():
    # mpmath ships its own Pade solver; coefficients must agree.
    import mpmath
    series = numeric_coeffs(13, to_bigfloat(SLOPE, 60), 60)
    P = pade_construct(series, 5, 8)
    with mp.workdps(70):
        ref_p, ref_q = mpmath.pade(list(series.coeffs[:14]), 5, 8)
        for mine, ref in zip(P.a, ref_p):
            assert abs(mine - ref) < mpf(10) ** -45
        for mine, ref in zip(P.b, ref_q):
            assert abs(mine - ref) < mpf(10) ** -45


@pytest.mark.parametrize("m_ord,n_ord", [(0, 0), (2, 5), (5, 8)])
def test_order_matching_by_reexpansion(m_ord, n_ord):
    series = numeric_coeffs(max(m_ord + n_ord, 3), to_bigfloat(SLOPE, 50), 50)
    P = pade_construct(series, m_ord, n_ord)
    with mp.workdps(60):
        # synthetic division of a by b reproduces the source coefficients
        expand = []
        for k in range(m_ord + n_ord + 1):
            acc = P.a[k] if k <= m_ord else mpf(0)
            for i in range(1, min(k, n_ord) + 1):
                acc -= P.b[i] * expand[k - i]
            expand.append(acc)
        for k, (got, want) in enumerate(zip(expand, series.coeffs)):
            scale = max(mpf(1), abs(want))
            assert abs(got - want) <= mpf(10) ** -42 * scale, f"t^{k}"


def test_singular_denominator_system():
    with pytest.raises(SingularSystemError):
        pade_construct(_series([1, 0, 0]), 1, 1)


def test_series_too_short():
    with pytest.raises(InsufficientSeriesError):
        pade_construct(_series([1, 1, 1]), 2, 3)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def test_eval_at_origin(tf58):
    f, fp = pade_eval(tf58, mpf(0))
    assert f == 1
    assert fp == 0


def test_eval_geometric_at_half():
    P = pade_construct(_series([1, 1]), 0, 1)
    f, fp = pade_eval(P, mpf("0.5"))
    with mp.workdps(45):
        assert abs(f - 2) < mpf(10) ** -38
        assert abs(fp - 4) < mpf(10) ** -37  # d/dt 1/(1-t) = 1/(1-t)^2


def test_eval_pole_detected():
    P = pade_construct(_series([1, 1]), 0, 1)
    with pytest.raises(PoleEncounteredError):
        pade_eval(P, mpf(1))


def test_eval_paper_value_at_one(tf58):
    f, _ = pade_eval(tf58, mpf(1))
    with mp.workdps(40):
        assert abs(f * f - mpf("0.424008")) < 1e-6


def test_derivative_matches_finite_difference(tf58):
    prec = tf58.precision
    with mp.workdps(prec + 10):
        t = mpf("0.7")
        h = mpf(10) ** (-prec // 3)
        f_mid, fp = pade_eval(tf58, t)
        f_hi, _ = pade_eval(tf58, t + h)
        f_lo, _ = pade_eval(tf58, t - h)
        central = (f_hi - f_lo) / (2 * h)
        # second-order accuracy: error ~ h^2 f''' / 6
        assert abs(fp - central) < mpf(10) ** (-2 * (prec // 3) + 2)


# ---------------------------------------------------------------------------
# Thomas-Fermi reconstruction
# ---------------------------------------------------------------------------

def test_tf_origin_exact(tf58):
    ev = tf_eval(tf58, mpf(0))
    assert ev.u == 1
    with mp.workdps(60):
        assert ev.uprime == 2 * tf58.slope
        # the published slope carries 18 significant digits
        assert abs(ev.uprime + mpf("1.58807102261137531")) < mpf(10) ** -17


def test_tf_negative_x_rejected(tf58):
    with pytest.raises(ValueError):
        tf_eval(tf58, mpf(-1))


@pytest.mark.parametrize("x,u_ref,mdu_ref", [
    ("10", "0.024315", "0.0046028"),
    ("1000", "0.000000137", "0.00000000040"),
])
def test_tf_table_rows(tf58, x, u_ref, mdu_ref):
    ev = tf_eval(tf58, to_bigfloat(x, 60))
    def last_digit_unit(s):
        return mpf(10) ** -(len(s.split(".")[1]))
    with mp.workdps(40):
        assert abs(ev.u - mpf(u_ref)) <= last_digit_unit(u_ref)
        assert abs(-ev.uprime - mpf(mdu_ref)) <= last_digit_unit(mdu_ref)


def test_tf_large_x_decay(tf58):
    # With denominator degree = numerator degree + 3 the reconstruction
    # decays like x^-3: u * x^3 stays finite and positive far out.
    for x in (mpf(10) ** 6, mpf(10) ** 8):
        ev = tf_eval(tf58, x)
        with mp.workdps(60):
            prod = ev.u * x**3
            assert prod > 0
            assert mp.isfinite(prod)


def test_tf_table_order_and_error_annotation():
    P = pade_construct(_series([1, 1]), 0, 1)  # pole at t=1, i.e. x=1
    rows = tf_table(P, [mpf(0), mpf(1), mpf("0.25")])
    assert [row.error is None for row in rows] == [True, False, True]
    assert rows[0].u == 1
    assert rows[1].u is None and "denominator" in rows[1].error
    with mp.workdps(45):
        # f(0.5)^2 = 4, uprime = f f'/t = 2*4/0.5
        assert abs(rows[2].u - 4) < mpf(10) ** -36
        assert abs(rows[2].uprime - 16) < mpf(10) ** -35
