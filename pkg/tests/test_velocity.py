import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpfv.grid import Grid
from mpfv.velocity import (
    GAUSS_OFFSET,
    StreamCase,
    StreamKind,
    analytic_velocity,
    cgrid_faces,
    face_divergence,
    gauss_face_speeds,
    speed_bound,
    stream_function,
)

ALL_CASES = [StreamCase(k) for k in StreamKind]


def test_diag_faces_are_unit():
    g = Grid(16, 16)
    vel = cgrid_faces(StreamCase(StreamKind.DIAG), g, t=0.3)
    assert np.allclose(vel.u, 1.0, atol=1e-14)
    assert np.allclose(vel.v, 1.0, atol=1e-14)


def test_quad_is_frozen_at_half_period():
    g = Grid(16, 16)
    vel = cgrid_faces(StreamCase(StreamKind.QUAD, period=1.0), g, t=0.5)
    assert np.abs(vel.u).max() < 1e-13
    assert np.abs(vel.v).max() < 1e-13


def test_sbr_vertical_face_speed_is_exact_linear_profile():
    # quadratic stream function makes the vertex difference exact up to the
    # lattice snap of the vertex samples
    g = Grid(20, 20)
    vel = cgrid_faces(StreamCase(StreamKind.SBR), g)
    y = g.y_centers()
    expect = -2.0 * np.pi * (y - 0.5)
    assert np.allclose(vel.u, expect[None, :], atol=1e-9)
    x = g.x_centers()
    assert np.allclose(vel.v, 2.0 * np.pi * (x - 0.5)[:, None], atol=1e-9)


@pytest.mark.parametrize("case", ALL_CASES, ids=lambda c: c.kind.value)
@pytest.mark.parametrize("n", [16, 100, 256])
@pytest.mark.parametrize("t", [0.0, 0.37])
def test_cgrid_divergence_free(case, n, t):
    g = Grid(n, n)
    vel = cgrid_faces(case, g, t)
    assert np.abs(face_divergence(vel, g)).max() <= 1e-13


@pytest.mark.parametrize("case", ALL_CASES, ids=lambda c: c.kind.value)
def test_analytic_velocity_matches_stream_function_differences(case):
    # oracle: central finite differences of the stream function
    rng = np.random.default_rng(7)
    pts = rng.random((1000, 2))
    t = 0.21
    h = 1e-6
    u, v = analytic_velocity(case, pts[:, 0], pts[:, 1], t)
    fd_u = (
        stream_function(case, pts[:, 0], pts[:, 1] + h, t)
        - stream_function(case, pts[:, 0], pts[:, 1] - h, t)
    ) / (2 * h)
    fd_v = -(
        stream_function(case, pts[:, 0] + h, pts[:, 1], t)
        - stream_function(case, pts[:, 0] - h, pts[:, 1], t)
    ) / (2 * h)
    scale = max(1.0, np.abs(u).max(), np.abs(v).max())
    assert np.abs(u - fd_u).max() / scale < 1e-6
    assert np.abs(v - fd_v).max() / scale < 1e-6


def test_diag_velocity_constant():
    u, v = analytic_velocity(StreamCase(StreamKind.DIAG), 0.3, 0.9)
    assert float(u) == 1.0 and float(v) == 1.0


def test_sbr_center_is_stagnant():
    u, v = analytic_velocity(StreamCase(StreamKind.SBR), 0.5, 0.5)
    assert float(u) == 0.0 and float(v) == 0.0


@pytest.mark.parametrize("kind", [StreamKind.QUAD, StreamKind.SIN])
def test_time_reversal(kind):
    case = StreamCase(kind, period=1.0)
    g = Grid(12, 12)
    t = 0.2
    a = cgrid_faces(case, g, t)
    b = cgrid_faces(case, g, case.period - t)
    assert np.allclose(a.u, -b.u, atol=1e-13)
    assert np.allclose(a.v, -b.v, atol=1e-13)
    qa = gauss_face_speeds(case, g, t)
    qb = gauss_face_speeds(case, g, case.period - t)
    assert np.allclose(qa.u_minus, -qb.u_minus, atol=1e-13)
    assert np.allclose(qa.v_plus, -qb.v_plus, atol=1e-13)


@pytest.mark.parametrize("case", ALL_CASES, ids=lambda c: c.kind.value)
def test_gauss_speeds_evaluate_the_analytic_field(case):
    g = Grid(10, 14)
    t = 0.13
    q = gauss_face_speeds(case, g, t)
    xf = g.x_faces()
    yc = g.y_centers()
    i, j = 3, 5
    u_expect, _ = analytic_velocity(case, xf[i], yc[j] - GAUSS_OFFSET * g.dy, t)
    assert q.u_minus[i, j] == pytest.approx(float(u_expect), abs=1e-14)
    xc = g.x_centers()
    yf = g.y_faces()
    _, v_expect = analytic_velocity(case, xc[i] + GAUSS_OFFSET * g.dx, yf[j], t)
    assert q.v_plus[i, j] == pytest.approx(float(v_expect), abs=1e-14)


@pytest.mark.parametrize("case", ALL_CASES, ids=lambda c: c.kind.value)
@settings(max_examples=20)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 2.0))
def test_speed_bound_dominates(case, x, y, t):
    su, sv = speed_bound(case)
    u, v = analytic_velocity(case, x, y, t)
    assert abs(float(u)) <= su + 1e-12
    assert abs(float(v)) <= sv + 1e-12
