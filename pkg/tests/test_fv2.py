import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpfv.fv2 import (
    FaceTraces2,
    LinearRecon,
    central_slopes,
    face_traces,
    fv2_courant,
    fv2_tendency,
    limit_traces,
    trace_mean_residual,
)
from mpfv.grid import Grid
from mpfv.velocity import FaceVelocity, StreamCase, StreamKind, cgrid_faces


def const_vel(g, u=1.0, v=1.0):
    return FaceVelocity(np.full(g.shape, float(u)), np.full(g.shape, float(v)))


def test_central_slope_value():
    g = Grid(6, 6)  # dx = 1/6; use explicit spacing via a custom grid field
    # means 0,1,2 along x around the middle cell with dx=0.5 scaled by hand:
    # slopes are (u[i+1]-u[i-1])/(2 dx), so craft the field accordingly
    u = np.zeros(g.shape)
    u[2, :] = 0.0
    u[3, :] = 1.0
    u[4, :] = 2.0
    r = central_slopes(u, g)
    assert r.ux[3, 0] == pytest.approx((2.0 - 0.0) / (2 * g.dx))


def test_constant_field_has_zero_slopes():
    g = Grid(8, 8)
    r = central_slopes(np.full(g.shape, 3.3), g)
    assert np.all(r.ux == 0.0)
    assert np.all(r.uy == 0.0)


def test_checkerboard_slopes_cancel():
    g = Grid(8, 8)
    i, j = np.meshgrid(np.arange(8), np.arange(8), indexing="ij")
    u = np.where((i + j) % 2 == 0, 1.0, -1.0)
    r = central_slopes(u, g)
    assert np.all(r.ux == 0.0)
    assert np.all(r.uy == 0.0)


def test_face_trace_values():
    g = Grid(8, 8)  # dx = 1/8
    mean = np.full(g.shape, 1.0)
    r = LinearRecon(mean=mean, ux=np.full(g.shape, 2.0), uy=np.zeros(g.shape), alpha=1.0)
    tr = face_traces(r, g)
    assert tr.right[0, 0] == pytest.approx(1.0 + 2.0 * 0.5 * g.dx)
    assert tr.left[0, 0] == pytest.approx(1.0 - 2.0 * 0.5 * g.dx)
    assert tr.top[0, 0] == 1.0
    assert tr.bottom[0, 0] == 1.0


def test_alpha_zero_collapses_to_means():
    g = Grid(8, 8)
    rng = np.random.default_rng(0)
    mean = rng.random(g.shape)
    r = LinearRecon(mean, rng.standard_normal(g.shape), rng.standard_normal(g.shape), alpha=0.0)
    tr = face_traces(r, g)
    for p in tr.all_points():
        assert np.array_equal(p, mean)


@given(st.integers(0, 10**6))
def test_trace_mean_identity(seed):
    g = Grid(8, 8)
    rng = np.random.default_rng(seed)
    r = LinearRecon(
        rng.random(g.shape), rng.standard_normal(g.shape), rng.standard_normal(g.shape),
        alpha=rng.random(g.shape),
    )
    tr = face_traces(r, g)
    assert trace_mean_residual(tr, r.mean) <= 1e-13 * max(1.0, np.abs(r.mean).max())


def test_constant_field_zero_tendency_under_divergence_free_velocity():
    g = Grid(16, 16)
    u = np.full(g.shape, 0.7)
    vel = cgrid_faces(StreamCase(StreamKind.SIN), g, 0.2)
    tr = face_traces(central_slopes(u, g), g)
    tend = fv2_tendency(tr, vel, g)
    assert np.abs(tend).max() <= 1e-12


def test_zero_velocity_zero_tendency():
    g = Grid(8, 8)
    rng = np.random.default_rng(1)
    u = rng.random(g.shape)
    tr = face_traces(central_slopes(u, g), g)
    tend = fv2_tendency(tr, const_vel(g, 0.0, 0.0), g)
    assert np.all(tend == 0.0)


def test_single_cell_upwind_tendency():
    # first-order update of an isolated unit cell under unit diagonal flow
    g = Grid(8, 8)
    h = g.dx
    u = np.zeros(g.shape)
    u[3, 3] = 1.0
    r = central_slopes(u, g)
    tr = limit_traces(face_traces(r, g), u, 0.0)
    tend = fv2_tendency(tr, const_vel(g), g)
    assert tend[3, 3] == pytest.approx(-2.0 / h)
    assert tend[4, 3] == pytest.approx(1.0 / h)
    assert tend[3, 4] == pytest.approx(1.0 / h)
    assert tend[2, 3] == 0.0
    assert tend[3, 2] == 0.0


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_global_conservation(seed):
    g = Grid(12, 12)
    rng = np.random.default_rng(seed)
    u = rng.random(g.shape)
    vel = FaceVelocity(rng.standard_normal(g.shape), rng.standard_normal(g.shape))
    tr = face_traces(central_slopes(u, g), g)
    tend = fv2_tendency(tr, vel, g)
    assert abs(float(tend.sum())) * g.cell_volume <= 1e-12


def test_courant_number_example():
    g = Grid(100, 100)
    vel = const_vel(g)
    assert fv2_courant(vel, g, 0.0025) == pytest.approx(0.5)
    assert fv2_courant(const_vel(g, 0, 0), g, 0.0025) == 0.0


def test_courant_sbr_sweep_matches_reference_step_count():
    # dt = 1/1256 puts the cell Courant number within 2% of one half
    g = Grid(100, 100)
    vel = cgrid_faces(StreamCase(StreamKind.SBR), g)
    c = fv2_courant(vel, g, 1.0 / 1256.0)
    assert abs(c - 0.5) / 0.5 < 0.02
