import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from mpfv.flux import upwind_flux

vals = st.floats(-1e6, 1e6, allow_nan=False)


def test_pure_outflow_takes_inner_trace():
    assert upwind_flux(1.0, 0.0, 2.0) == 2.0


def test_pure_inflow_takes_outer_trace():
    assert upwind_flux(1.0, 0.0, -2.0) == 0.0


def test_consistency_example():
    assert upwind_flux(3.0, 3.0, -1.5) == -4.5


def test_stagnation_returns_zero():
    assert upwind_flux(123.0, -456.0, 0.0) == 0.0


def test_consistency_random():
    rng = np.random.default_rng(0)
    a = rng.uniform(-10, 10, 10_000)
    vn = rng.uniform(-5, 5, 10_000)
    f = upwind_flux(a, a, vn)
    # exact up to one rounding of the product
    assert np.abs(f - a * vn).max() <= np.spacing(np.abs(a * vn)).max()


@given(vals, vals, vals)
def test_conservation(a, b, vn):
    assert upwind_flux(a, b, vn) == -upwind_flux(b, a, -vn)


@given(vals, vals, vals, st.floats(1e-8, 10.0))
def test_monotone_in_traces(a, b, vn, da):
    f0 = upwind_flux(a, b, vn)
    assert upwind_flux(a + da, b, vn) >= f0  # nondecreasing in the inner trace
    assert upwind_flux(a, b + da, vn) <= f0  # nonincreasing in the outer trace
