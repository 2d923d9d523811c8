"""Second-order finite volume operator.

Linear subcell reconstruction from centred slopes, one midpoint trace per
face, upwind fluxes computed once per face and scattered with opposite signs,
and the cell-defined Courant number. The mean of the four face traces equals
the cell mean for any slopes, which is the decomposition that the limiter
theory acts on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .flux import upwind_flux
from .grid import Grid
from .velocity import FaceVelocity


@dataclass
class LinearRecon:
    """p(x, y) = mean + alpha * (ux * (x - x_i) + uy * (y - y_j)) per cell."""

    mean: np.ndarray
    ux: np.ndarray
    uy: np.ndarray
    alpha: np.ndarray | float = 1.0


@dataclass
class FaceTraces2:
    """Reconstruction values at the four face midpoints of every cell."""

    right: np.ndarray
    left: np.ndarray
    top: np.ndarray
    bottom: np.ndarray

    def all_points(self) -> tuple[np.ndarray, ...]:
        return (self.right, self.left, self.top, self.bottom)


def central_slopes(u: np.ndarray, g: Grid) -> LinearRecon:
    """Centred-difference slopes with periodic wrap, unlimited (alpha = 1)."""
    ux = (np.roll(u, -1, axis=0) - np.roll(u, 1, axis=0)) / (2.0 * g.dx)
    uy = (np.roll(u, -1, axis=1) - np.roll(u, 1, axis=1)) / (2.0 * g.dy)
    return LinearRecon(mean=u, ux=ux, uy=uy, alpha=1.0)


def face_traces(r: LinearRecon, g: Grid) -> FaceTraces2:
    sx = r.alpha * r.ux * (0.5 * g.dx)
    sy = r.alpha * r.uy * (0.5 * g.dy)
    return FaceTraces2(
        right=r.mean + sx, left=r.mean - sx, top=r.mean + sy, bottom=r.mean - sy
    )


def limit_traces(tr: FaceTraces2, mean: np.ndarray, alpha) -> FaceTraces2:
    """Scale every trace's deviation from the cell mean by alpha."""
    return FaceTraces2(*(mean + alpha * (p - mean) for p in tr.all_points()))


def trace_mean_residual(tr: FaceTraces2, mean: np.ndarray) -> float:
    """Max deviation of the four-trace average from the cell mean."""
    avg = 0.25 * (tr.right + tr.left + tr.top + tr.bottom)
    return float(np.abs(avg - mean).max())


def face_fluxes(tr: FaceTraces2, vel: FaceVelocity) -> tuple[np.ndarray, np.ndarray]:
    """One upwind flux per face: fv[i, j] through the vertical face (i+1/2, j),
    fh[i, j] through the horizontal face (i, j+1/2)."""
    fv = upwind_flux(tr.right, np.roll(tr.left, -1, axis=0), vel.u)
    fh = upwind_flux(tr.top, np.roll(tr.bottom, -1, axis=1), vel.v)
    return fv, fh


def flux_divergence_tendency(fv: np.ndarray, fh: np.ndarray, g: Grid) -> np.ndarray:
    """Cell-mean tendency from per-face fluxes, applied antisymmetrically."""
    return (
        -(fv - np.roll(fv, 1, axis=0)) / g.dx - (fh - np.roll(fh, 1, axis=1)) / g.dy
    )


def fv2_tendency(tr: FaceTraces2, vel: FaceVelocity, g: Grid) -> np.ndarray:
    fv, fh = face_fluxes(tr, vel)
    return flux_divergence_tendency(fv, fh, g)


def courant_rate(vel: FaceVelocity, g: Grid) -> float:
    """Max over cells of the outflow rate sum_faces (v.n)+ |face| / |cell|;
    multiplied by dt this is the cell Courant number C_K."""
    out_x = np.maximum(vel.u, 0.0) + np.maximum(-np.roll(vel.u, 1, axis=0), 0.0)
    out_y = np.maximum(vel.v, 0.0) + np.maximum(-np.roll(vel.v, 1, axis=1), 0.0)
    return float((out_x / g.dx + out_y / g.dy).max())


def fv2_courant(vel: FaceVelocity, g: Grid, dt: float) -> float:
    return dt * courant_rate(vel, g)
