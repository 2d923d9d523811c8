"""Velocity fields for the four benchmark flows, defined by stream functions.

The second-order scheme consumes discretely divergence-free C-grid face
speeds built from vertex differences of the stream function. The fourth-order
scheme consumes the analytic velocity (u, v) = (dPsi/dy, -dPsi/dx) evaluated
directly at the two Gauss points of each face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .grid import Grid

# transverse Gauss-point offset of a 2-point rule, as a fraction of cell size
GAUSS_OFFSET = 0.5 / math.sqrt(3.0)


class StreamKind(str, Enum):
    DIAG = "diag"  # constant diagonal flow
    QUAD = "quad"  # time-reversing quadratic deformation
    SIN = "sin"    # time-reversing sine deformation
    SBR = "sbr"    # solid body rotation


@dataclass(frozen=True)
class StreamCase:
    """One benchmark flow. period is the reversal period T of the quad and
    sin cases; center is the rotation centre of sbr."""

    kind: StreamKind
    period: float = 1.0
    center: tuple[float, float] = (0.5, 0.5)


def time_factor(case: StreamCase, t: float) -> float:
    """cos(pi t / T) for the reversing cases, 1 otherwise."""
    if case.kind in (StreamKind.QUAD, StreamKind.SIN):
        return math.cos(math.pi * t / case.period)
    return 1.0


def stream_function(case: StreamCase, x, y, t: float = 0.0):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = case.kind
    if k is StreamKind.DIAG:
        return y - x
    if k is StreamKind.QUAD:
        return 8.0 * np.pi * x * (x - 1.0) * y * (y - 1.0) * time_factor(case, t)
    if k is StreamKind.SIN:
        # single domain-filling vortex, the sinusoidal counterpart of quad;
        # a half-wavelength of one keeps the tracer bump off the stagnation
        # lines so the reversal test measures accuracy rather than tearing
        return 0.5 * np.sin(np.pi * x) * np.sin(np.pi * y) * time_factor(case, t)
    xc, yc = case.center
    return -np.pi * ((x - xc) ** 2 + (y - yc) ** 2)


def analytic_velocity(case: StreamCase, x, y, t: float = 0.0):
    """(u, v) = (dPsi/dy, -dPsi/dx) in closed form, broadcast over x, y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = case.kind
    if k is StreamKind.DIAG:
        one = np.ones(np.broadcast(x, y).shape)
        return one, one.copy()
    if k is StreamKind.QUAD:
        phi = time_factor(case, t)
        u = 8.0 * np.pi * x * (x - 1.0) * (2.0 * y - 1.0) * phi
        v = -8.0 * np.pi * (2.0 * x - 1.0) * y * (y - 1.0) * phi
        return u, v
    if k is StreamKind.SIN:
        phi = time_factor(case, t)
        u = 0.5 * np.pi * np.sin(np.pi * x) * np.cos(np.pi * y) * phi
        v = -0.5 * np.pi * np.cos(np.pi * x) * np.sin(np.pi * y) * phi
        return u, v
    xc, yc = case.center
    zero = 0.0 * (x + y)  # broadcast helper
    return -2.0 * np.pi * (y - yc) + zero, 2.0 * np.pi * (x - xc) + zero


def speed_bound(case: StreamCase) -> tuple[float, float]:
    """Componentwise sup of |u| and |v| over the domain at unit time factor.

    Any discrete face speed (C-grid face average or Gauss-point sample) is
    bounded by these, so a dt planned from them respects the Courant target
    at every stage.
    """
    k = case.kind
    if k is StreamKind.DIAG:
        return 1.0, 1.0
    if k is StreamKind.QUAD:
        # |x(x-1)| <= 1/4 and |2y-1| <= 1 on the unit square
        return 2.0 * math.pi, 2.0 * math.pi
    if k is StreamKind.SIN:
        return 0.5 * math.pi, 0.5 * math.pi
    xc, yc = case.center
    return 2.0 * math.pi * max(yc, 1.0 - yc), 2.0 * math.pi * max(xc, 1.0 - xc)


@dataclass(frozen=True)
class FaceVelocity:
    """C-grid face-normal speeds: u[i, j] on the vertical face (i+1/2, j),
    v[i, j] on the horizontal face (i, j+1/2)."""

    u: np.ndarray
    v: np.ndarray
    time_factor: float = 1.0


def cgrid_faces(case: StreamCase, g: Grid, t: float = 0.0) -> FaceVelocity:
    """Face speeds from vertex stream-function differences.

    u_{i+1/2,j} = (Psi(x_{i+1/2}, y_{j+1/2}) - Psi(x_{i+1/2}, y_{j-1/2})) / dy
    v_{i,j+1/2} = -(Psi(x_{i+1/2}, y_{j+1/2}) - Psi(x_{i-1/2}, y_{j+1/2})) / dx

    Sharing one vertex sample array (wrapped across the periodic seam) makes
    the discrete divergence telescope to zero bitwise. The diag case's stream
    function is linear rather than periodic, so it is handled as its exact
    constant velocity instead of being sampled across the seam.
    """
    if case.kind is StreamKind.DIAG:
        one = np.ones(g.shape)
        return FaceVelocity(u=one, v=one.copy(), time_factor=1.0)
    psi = stream_function(case, g.x_faces()[:, None], g.y_faces()[None, :], t)
    # snap the vertex samples to a shared power-of-two lattice so that the
    # increments, and with them the telescoping divergence sums, stay exact
    # in floating point at power-of-two resolutions
    scale = float(np.abs(psi).max())
    if scale > 0.0:
        q = 2.0 ** (math.ceil(math.log2(scale)) - 40)
        psi = np.round(psi / q) * q
    u = (psi - np.roll(psi, 1, axis=1)) / g.dy
    v = -(psi - np.roll(psi, 1, axis=0)) / g.dx
    return FaceVelocity(u=u, v=v, time_factor=time_factor(case, t))


def face_divergence(vel: FaceVelocity, g: Grid) -> np.ndarray:
    """Per-cell discrete divergence of a C-grid field."""
    ddx = (vel.u - np.roll(vel.u, 1, axis=0)) / g.dx
    ddy = (vel.v - np.roll(vel.v, 1, axis=1)) / g.dy
    return ddx + ddy


@dataclass(frozen=True)
class QuadVelocity:
    """Analytic face-normal speeds at the two Gauss points of each face.

    u_minus[i, j] and u_plus[i, j] sit on the vertical face (i+1/2, j) at
    y = y_j -/+ dy * GAUSS_OFFSET; v_minus / v_plus sit on the horizontal
    face (i, j+1/2) at x = x_i -/+ dx * GAUSS_OFFSET.
    """

    u_minus: np.ndarray
    u_plus: np.ndarray
    v_minus: np.ndarray
    v_plus: np.ndarray
    time_factor: float = 1.0


def gauss_face_speeds(case: StreamCase, g: Grid, t: float = 0.0) -> QuadVelocity:
    xf = g.x_faces()[:, None]
    yc = g.y_centers()[None, :]
    xc = g.x_centers()[:, None]
    yf = g.y_faces()[None, :]
    oy = GAUSS_OFFSET * g.dy
    ox = GAUSS_OFFSET * g.dx
    u_minus = analytic_velocity(case, xf, yc - oy, t)[0]
    u_plus = analytic_velocity(case, xf, yc + oy, t)[0]
    v_minus = analytic_velocity(case, xc - ox, yf, t)[1]
    v_plus = analytic_velocity(case, xc + ox, yf, t)[1]
    return QuadVelocity(u_minus, u_plus, v_minus, v_plus, time_factor(case, t))
