"""Shared fixtures: the expensive full-depth root sequences are computed
once per session and reused by the acceptance suite."""

import time

import pytest
from mpmath import mp

from hankelpade import numeric_coeffs, pade_construct, root_sequence

#: Published 18-digit slope at origin; the reference for reproduction tests.
REFERENCE_TWO_F2 = "-1.58807102261137531"


@pytest.fixture(scope="session")
def seq_d3_full():
    started = time.monotonic()
    seq = root_sequence(3, 30)
    return {"seq": seq, "seconds": time.monotonic() - started}


@pytest.fixture(scope="session")
def seq_d4_full():
    started = time.monotonic()
    seq = root_sequence(4, 30)
    return {"seq": seq, "seconds": time.monotonic() - started}


@pytest.fixture(scope="session")
def pade_5_8(seq_d3_full):
    """The working [5/8] approximant at the converged slope."""
    slope = seq_d3_full["seq"].final.root
    series = numeric_coeffs(13, slope, 60)
    return pade_construct(series, 5, 8)
